/**
 * Answer View: the envelope as the analyst sees it.
 *
 * Every fact shown here is read straight off the envelope (or, for the
 * master/amendment badges, off the service's /contracts rows keyed by the
 * contract id the envelope names). Nothing is computed client-side.
 */

import type {
  AnswerEnvelope,
  Attempt,
  Citation,
  ContractRow,
  QueryBody,
  SectionPayload,
  TraceEntry,
  ValidationReport,
} from "../types.js";
import { classes, esc } from "./html.js";

export type FactsById = Record<string, ContractRow>;

function badge(cid: string, facts: FactsById): string {
  const row = facts[cid];
  if (!row) return "";
  if (row.is_master === "true") return ` <span class="badge badge-master">master</span>`;
  if (row.is_master === "false") return ` <span class="badge badge-amendment">amendment</span>`;
  return "";
}

function contractChip(cid: string, text: string, facts: FactsById): string {
  return (
    `<button type="button" class="contract-chip" data-contract="${esc(cid)}" ` +
    `title="pre-fill the composer with this contract's parties">${esc(text)}</button>` +
    badge(cid, facts)
  );
}

function queryLine(query: QueryBody): string {
  const ents = Object.entries(query.entities)
    .map(([k, v]) => `${esc(k)} &quot;${esc(v)}&quot;`)
    .join(", ");
  const clause = query.clause_label
    ? ` / clause <code>${esc(query.clause_label)}</code>`
    : "";
  return (
    `<p class="answer-meta">task <code>${esc(query.task)}</code>` +
    `${clause} for ${ents}</p>`
  );
}

// -- result payloads, one block per result_kind ---------------------------

function contractPairs(result: unknown, facts: FactsById): string {
  const pairs = result as [string, { contract_id: string }][];
  const items = pairs
    .map(
      ([shown, ref]) =>
        `<li>${contractChip(ref.contract_id, shown, facts)}</li>`,
    )
    .join("");
  return `<ul class="result-contracts">${items}</ul>`;
}

const PAIR_HEADERS: Record<string, [string, string]> = {
  find_parties: ["role", "name"],
  find_master_dates: ["contract", "master date"],
  find_termination_dates: ["contract", "termination"],
  find_master_agreements: ["contract", "master"],
};

function plainPairs(result: unknown, task: string, facts: FactsById): string {
  const pairs = result as [unknown, unknown][];
  const [h1, h2] = PAIR_HEADERS[task] ?? ["key", "value"];
  const rows = pairs
    .map(([a, b]) => {
      const left = typeof a === "string" && facts[a]
        ? contractChip(a, a, facts)
        : esc(cell(a));
      const right =
        typeof b === "object" && b !== null && "contract_id" in (b as object)
          ? esc((b as { contract_id: string }).contract_id)
          : esc(cell(b));
      return `<tr><td>${left}</td><td>${right}</td></tr>`;
    })
    .join("");
  return (
    `<table class="result-pairs"><thead><tr>` +
    `<th>${esc(h1)}</th><th>${esc(h2)}</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

function cell(v: unknown): string {
  return typeof v === "string" ? v : JSON.stringify(v);
}

function sectionCards(result: unknown): string {
  const sections = result as SectionPayload[];
  const cards = sections
    .map((s) => {
      if (s.ordinal < 0) {
        return (
          `<article class="section-card section-missing">` +
          `<header>${esc(s.contract_id)} / ${esc(s.title_label)}</header>` +
          `<p class="missing-note">no matching section in this contract</p>` +
          `</article>`
        );
      }
      return (
        `<article class="section-card" data-contract="${esc(s.contract_id)}" data-ordinal="${s.ordinal}">` +
        `<header>${esc(s.contract_id)} &sect;${s.ordinal} / ${esc(s.title_label)}</header>` +
        `<h4>${esc(s.heading_text)}</h4>` +
        `<pre class="section-body">${esc(s.body_text)}</pre>` +
        `</article>`
      );
    })
    .join("");
  return `<div class="result-sections">${cards}</div>`;
}

function resultBlock(env: AnswerEnvelope, facts: FactsById): string {
  switch (env.result_kind) {
    case "text":
      return `<pre class="result-text">${esc(env.result)}</pre>`;
    case "empty":
      return `<p class="result-empty">The plan ran fine and returned an empty list.</p>`;
    case "contract_pairs":
      return contractPairs(env.result, facts);
    case "date_pairs":
    case "string_pairs":
      return plainPairs(env.result, env.query.task, facts);
    case "sections":
      return sectionCards(env.result);
    default:
      return `<pre class="result-json">${esc(JSON.stringify(env.result, null, 2))}</pre>`;
  }
}

// -- citations -------------------------------------------------------------

function citationList(citations: Citation[]): string {
  if (!citations.length) return "";
  const links = citations
    .map(
      (c) =>
        `<li><a class="citation" href="#/contracts/${esc(c.contract_id)}/s${c.ordinal}" ` +
        `data-contract="${esc(c.contract_id)}" data-ordinal="${c.ordinal}">` +
        `${esc(c.contract_id)} &sect;${c.ordinal}</a></li>`,
    )
    .join("");
  return (
    `<nav class="citations"><h3>Citations</h3>` +
    `<ul>${links}</ul></nav>`
  );
}

// -- diagnostics pane -------------------------------------------------------

function reportList(reports: ValidationReport[]): string {
  const items = reports
    .map((r) => {
      const diags = r.diagnostics
        .map(
          (d) =>
            `<li class="diag"><code>${esc(d.code)}</code> ${esc(d.message)}` +
            ` <span class="diag-locus">(${esc(d.locus)})</span>` +
            (d.suggestion ? ` <em class="diag-suggestion">try: ${esc(d.suggestion)}</em>` : "") +
            `</li>`,
        )
        .join("");
      return (
        `<li class="${classes("report", r.passed ? "report-pass" : "report-fail")}">` +
        `${esc(r.tier)}: ${r.passed ? "pass" : "fail"}` +
        (diags ? `<ul class="diags">${diags}</ul>` : "") +
        `</li>`
      );
    })
    .join("");
  return `<ul class="reports">${items}</ul>`;
}

function traceTable(trace: TraceEntry[]): string {
  if (!trace.length) return `<p class="trace-empty">no tool calls</p>`;
  const rows = trace
    .map((t) => {
      const args = Object.entries(t.args)
        .map(([k, v]) => `${esc(k)}=${esc(v)}`)
        .join(", ");
      return (
        `<tr><td><code>${esc(t.tool)}</code></td>` +
        `<td class="trace-args">${args}</td>` +
        `<td>${esc(t.outcome)}</td>` +
        `<td class="num">${t.duration_ms.toFixed(1)}ms</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="trace"><thead><tr>` +
    `<th>tool</th><th>args</th><th>outcome</th><th>time</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

function attemptBlocks(attempts: Attempt[]): string {
  return attempts
    .map(
      (a, i) =>
        `<details class="attempt"><summary>attempt ${i + 1}</summary>` +
        `<pre class="plan-source">${esc(a.source)}</pre>` +
        reportList(a.reports) +
        traceTable(a.trace) +
        `</details>`,
    )
    .join("");
}

export function renderDiagnostics(env: AnswerEnvelope): string {
  return (
    `<details class="diagnostics"><summary>Diagnostics: plan, validation, trace</summary>` +
    `<h4>Plan source</h4>` +
    `<pre class="plan-source">${esc(env.plan_source)}</pre>` +
    `<h4>Validation reports</h4>` +
    reportList(env.reports) +
    `<h4>Tool trace</h4>` +
    traceTable(env.trace) +
    `<h4>Attempts (${env.attempts.length})</h4>` +
    attemptBlocks(env.attempts) +
    `</details>`
  );
}

// -- the view ---------------------------------------------------------------

export function renderAnswer(env: AnswerEnvelope, facts: FactsById = {}): string {
  const comparisonLink = env.comparison
    ? `<p class="comparison-link"><a href="#/comparison">Comparison view: ` +
      `${env.comparison.items.length} sections, ${env.comparison.deltas.length} deltas</a></p>`
    : "";
  return (
    `<section class="answer">` +
    `<h2>Answer</h2>` +
    queryLine(env.query) +
    `<div class="result" data-kind="${esc(env.result_kind)}">` +
    resultBlock(env, facts) +
    `</div>` +
    comparisonLink +
    citationList(env.citations) +
    renderDiagnostics(env) +
    `</section>`
  );
}
