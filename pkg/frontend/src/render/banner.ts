/** Problem-detail banners for failed service calls. */

import type { ProblemDetail } from "../types.js";
import { classes, esc } from "./html.js";

/**
 * Unknown-entity failures get their own look: the query was well-formed,
 * the corpus just has no such party. That keeps them visually distinct
 * from both hard errors and legitimately empty results.
 */
export function renderProblem(problem: ProblemDetail, status?: number): string {
  const unknownEntity = problem.code === "E_UNKNOWN_ENTITY";
  const cls = classes(
    "banner",
    unknownEntity ? "banner-unknown-entity" : "banner-error",
  );
  const head = unknownEntity ? "Unknown entity" : `Request failed (${esc(problem.code)})`;
  const locus = problem.locus
    ? `<span class="banner-locus">at ${esc(problem.locus)}</span>`
    : "";
  const hint = unknownEntity
    ? `<p class="banner-hint">No party in the corpus matches this name. ` +
      `Check spelling in the Contract Browser; close variants resolve automatically.</p>`
    : "";
  return (
    `<div class="${cls}" role="alert"${status ? ` data-status="${status}"` : ""}>` +
    `<strong>${head}</strong> ` +
    `<span class="banner-message">${esc(problem.message)}</span> ${locus}` +
    hint +
    `</div>`
  );
}
