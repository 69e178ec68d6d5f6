/** Thin fetch client for the lawflow service. Errors carry problem details. */

import type {
  AnswerEnvelope,
  ContractDetail,
  ContractRow,
  Health,
  ProblemDetail,
  QueryBody,
  SectionBody,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public problem: ProblemDetail,
  ) {
    super(problem.message);
    this.name = "ApiError";
  }
}

function isProblem(data: unknown): data is ProblemDetail {
  return (
    typeof data === "object" &&
    data !== null &&
    typeof (data as ProblemDetail).code === "string" &&
    typeof (data as ProblemDetail).message === "string"
  );
}

export class Api {
  constructor(public readonly base: string) {}

  private async go<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, {
        code: "E_UNREACHABLE",
        message: `service at ${this.base} is unreachable (${String(err)})`,
      });
    }
    const text = await resp.text();
    let data: unknown = null;
    if (text) {
      try {
        data = JSON.parse(text);
      } catch {
        data = null; // non-JSON body; fall through to the status check
      }
    }
    if (!resp.ok) {
      const problem = isProblem(data)
        ? data
        : { code: `E_HTTP_${resp.status}`, message: text || resp.statusText };
      throw new ApiError(resp.status, problem);
    }
    return data as T;
  }

  health(): Promise<Health> {
    return this.go<Health>("/health");
  }

  query(body: QueryBody): Promise<AnswerEnvelope> {
    return this.go<AnswerEnvelope>("/query", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  contracts(): Promise<ContractRow[]> {
    return this.go<ContractRow[]>("/contracts");
  }

  contract(id: string): Promise<ContractDetail> {
    return this.go<ContractDetail>(`/contracts/${encodeURIComponent(id)}`);
  }

  sections(id: string, clause?: string): Promise<SectionBody[]> {
    const suffix = clause ? `?clause=${encodeURIComponent(clause)}` : "";
    return this.go<SectionBody[]>(
      `/contracts/${encodeURIComponent(id)}/sections${suffix}`,
    );
  }
}

/** API base: ?api=http://host:port beats the same-origin default. */
export function apiBase(search: string): string {
  const fromQuery = new URLSearchParams(search).get("api");
  if (fromQuery) return fromQuery.replace(/\/+$/, "");
  return "http://127.0.0.1:8000";
}
