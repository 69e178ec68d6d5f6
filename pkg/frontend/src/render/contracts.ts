/** Contract Browser: corpus list and per-contract detail with sections. */

import type { ContractDetail, ContractRow, SectionBody } from "../types.js";
import { classes, esc } from "./html.js";

function lifecycleCell(row: ContractRow): string {
  if (row.evergreen === "true") return `<em>evergreen</em>`;
  return esc(row.termination_date || "");
}

function roleBadge(row: ContractRow): string {
  if (row.is_master === "true") return `<span class="badge badge-master">master</span>`;
  if (row.is_master === "false") return `<span class="badge badge-amendment">amendment</span>`;
  return "";
}

export function renderContractList(rows: ContractRow[]): string {
  const body = rows
    .map((row) => {
      const parties = (row.parties ?? []).map((p) => esc(p.name)).join("; ");
      return (
        `<tr>` +
        `<td><a class="contract-link" href="#/contracts/${esc(row.contract_id)}">${esc(row.contract_id)}</a> ${roleBadge(row)}</td>` +
        `<td>${esc(row.effective_date ?? "")}</td>` +
        `<td>${lifecycleCell(row)}</td>` +
        `<td class="num">${row.sections}</td>` +
        `<td class="parties">${parties}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<section class="browser">` +
    `<h2>Contracts (${rows.length})</h2>` +
    `<table class="contract-table"><thead><tr>` +
    `<th>contract</th><th>effective</th><th>termination</th><th>sections</th><th>parties</th>` +
    `</tr></thead><tbody>${body}</tbody></table>` +
    `</section>`
  );
}

export function renderContractDetail(
  detail: ContractDetail,
  sections: SectionBody[],
  focusOrdinal: number | null = null,
): string {
  const parties = detail.parties
    .map(
      (p) =>
        `<li><span class="party-role">${esc(p.role)}</span> ${esc(p.name)}</li>`,
    )
    .join("");
  const cards = sections
    .map((s) => {
      const focused = focusOrdinal !== null && s.ordinal === focusOrdinal;
      return (
        `<article class="${classes("section-card", focused && "section-focus")}" id="sec-${s.ordinal}">` +
        `<header><span class="label-chip">${esc(s.title_label)}</span> &sect;${s.ordinal}</header>` +
        `<h4>${esc(s.heading_text)}</h4>` +
        `<pre class="section-body">${esc(s.body_text)}</pre>` +
        `</article>`
      );
    })
    .join("");
  return (
    `<section class="contract-detail">` +
    `<h2>${esc(detail.contract_id)}</h2>` +
    `<p class="detail-meta">accession ${esc(detail.accession_no)}, filed ${esc(detail.filed_date)}</p>` +
    `<p class="detail-uri"><code>${esc(detail.source_uri)}</code></p>` +
    `<ul class="party-list">${parties}</ul>` +
    `<button type="button" class="prefill" data-prefill="${esc(detail.contract_id)}">` +
    `Use these parties in the composer</button>` +
    `<h3>Sections (${sections.length})</h3>` +
    `<div class="section-list">${cards}</div>` +
    `</section>`
  );
}
