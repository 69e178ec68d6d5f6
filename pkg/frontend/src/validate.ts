/**
 * Client-side mirror of the service's query validation.
 *
 * The submit button stays disabled unless this validator accepts the form,
 * so anything we POST is something the orchestrator would accept too. The
 * checks (and their order, loci, and messages) follow the server exactly;
 * the parity test in tests/validate.test.ts holds both sides together.
 */

import { CLAUSE_LABELS, CLAUSE_TASKS, ENTITY_KEYS, TASKS } from "./generated.js";
import type { PartyRef, QueryBody } from "./types.js";

export interface ValidationProblem {
  code: string;
  message: string;
  locus: string | null;
}

export interface QueryFormState {
  task: string;
  fund: string;
  trust: string;
  custodian: string;
  clause_label: string; // "" when unset
  hint: string;
}

export const EMPTY_FORM: QueryFormState = {
  task: "explore_all",
  fund: "",
  trust: "",
  custodian: "",
  clause_label: "",
  hint: "",
};

export function isClauseTask(task: string): boolean {
  return (CLAUSE_TASKS as readonly string[]).includes(task);
}

function bad(message: string, locus: string | null): ValidationProblem {
  return { code: "E_BAD_QUERY", message, locus };
}

// repr() of a simple string, the way the server quotes names in messages
function rep(s: string): string {
  if (s.includes("'") && !s.includes('"')) return '"' + s + '"';
  return "'" + s.split("\\").join("\\\\").split("'").join("\\'") + "'";
}

// Python str() for JSON scalars; the server coerces with str() before checking
function pyStr(v: unknown): string {
  if (v === null || v === undefined) return "None";
  if (v === true) return "True";
  if (v === false) return "False";
  return String(v);
}

// Python truthiness for JSON values ({} and [] are falsy, unlike JS)
function pyTruthy(v: unknown): boolean {
  if (v === null || v === undefined || v === false || v === "") return false;
  if (v === 0) return false;
  if (Array.isArray(v)) return v.length > 0;
  if (typeof v === "object") return Object.keys(v as object).length > 0;
  return Boolean(v);
}

const KNOWN_FIELDS = ["task", "entities", "clause_label", "hint"];

/** Mirror of the full body check: shape first, then spec invariants. */
export function validateQueryBody(body: unknown): ValidationProblem | null {
  if (typeof body !== "object" || body === null || Array.isArray(body)) {
    return bad("query body must be an object", null);
  }
  const data = body as Record<string, unknown>;
  const extra = Object.keys(data).filter((k) => !KNOWN_FIELDS.includes(k)).sort();
  if (extra.length) {
    return bad(`unknown fields: ${extra.join(", ")}`, null);
  }
  const rawEntities = pyTruthy(data.entities) ? data.entities : {};
  if (typeof rawEntities !== "object" || rawEntities === null || Array.isArray(rawEntities)) {
    return bad("entities must be an object", "entities");
  }
  const task = data.task === undefined ? "" : pyStr(data.task);
  const entities: Record<string, string> = {};
  for (const [k, v] of Object.entries(rawEntities)) {
    entities[pyStr(k)] = pyStr(v);
  }
  const clause = pyTruthy(data.clause_label) ? pyStr(data.clause_label) : null;
  return validateSpec(task, entities, clause);
}

function validateSpec(
  task: string,
  entities: Record<string, string>,
  clause: string | null,
): ValidationProblem | null {
  if (!(TASKS as readonly string[]).includes(task)) {
    return bad(`unknown task ${rep(task)}`, "task");
  }
  const unknown = Object.keys(entities)
    .filter((k) => !(ENTITY_KEYS as readonly string[]).includes(k))
    .sort();
  if (unknown.length) {
    return bad(`unknown entity keys: ${unknown.join(", ")}`, "entities");
  }
  const populated = Object.entries(entities).filter(([, v]) => pyTruthy(v));
  if (!populated.length) {
    return bad("at least one entity must be given", "entities");
  }
  for (const [key, value] of populated) {
    if (!value.trim()) {
      return bad(`entity ${rep(key)} must be a non-empty string`, "entities");
    }
  }
  if (isClauseTask(task)) {
    if (!clause) {
      return bad(`task ${rep(task)} needs clause_label`, "clause_label");
    }
    if (!(CLAUSE_LABELS as readonly string[]).includes(clause)) {
      return bad(`unknown clause label ${rep(clause)}`, "clause_label");
    }
  } else if (clause) {
    return bad(`task ${rep(task)} does not take a clause label`, "clause_label");
  }
  return null;
}

/** Assemble the POST body the form would send. Blank inputs are omitted. */
export function formToBody(form: QueryFormState): QueryBody {
  const entities: Record<string, string> = {};
  for (const key of ENTITY_KEYS) {
    const value = form[key as "fund" | "trust" | "custodian"];
    if (value !== "") entities[key] = value;
  }
  const body: QueryBody = { task: form.task, entities };
  if (form.clause_label !== "") body.clause_label = form.clause_label;
  if (form.hint !== "") body.hint = form.hint;
  return body;
}

/** The problem blocking submission, or null when the form is submittable. */
export function formProblem(form: QueryFormState): ValidationProblem | null {
  return validateQueryBody(formToBody(form));
}

/** Pre-fill entity inputs from a contract's party list (first name per role). */
export function prefillFromParties(
  form: QueryFormState,
  parties: PartyRef[],
): QueryFormState {
  const next = { ...form, fund: "", trust: "", custodian: "" };
  for (const p of parties) {
    if (p.role === "fund" && !next.fund) next.fund = p.name;
    if (p.role === "trust" && !next.trust) next.trust = p.name;
    if (p.role === "custodian" && !next.custodian) next.custodian = p.name;
  }
  return next;
}
