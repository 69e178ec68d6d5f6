/** Comparison View: the chronological delta chain, one pane per pair. */

import type { Comparison, ComparisonDelta } from "../types.js";
import { esc } from "./html.js";

function chainStrip(comp: Comparison): string {
  const stops = comp.items
    .map(
      (it) =>
        `<li class="chain-stop">` +
        `<span class="chain-id">${esc(it.contract_id)}</span>` +
        `<time>${esc(it.effective)}</time>` +
        `<span class="chain-ordinal">&sect;${it.ordinal}</span>` +
        `</li>`,
    )
    .join("");
  return `<ol class="chain">${stops}</ol>`;
}

function diffColumn(title: string, cls: string, lines: string[]): string {
  if (!lines.length) return "";
  const items = lines.map((l) => `<li>${esc(l)}</li>`).join("");
  return (
    `<div class="diff-col ${cls}"><h4>${esc(title)}</h4>` +
    `<ul>${items}</ul></div>`
  );
}

function changedColumn(pairs: [string, string][]): string {
  if (!pairs.length) return "";
  const items = pairs
    .map(
      ([before, after]) =>
        `<li><del>${esc(before)}</del> <ins>${esc(after)}</ins></li>`,
    )
    .join("");
  return (
    `<div class="diff-col diff-changed"><h4>Changed literals</h4>` +
    `<ul>${items}</ul></div>`
  );
}

function deltaPane(delta: ComparisonDelta): string {
  const cols =
    diffColumn("Only in earlier", "diff-left", delta.diff.only_left) +
    diffColumn("Only in later", "diff-right", delta.diff.only_right) +
    changedColumn(delta.diff.changed_literals);
  return (
    `<article class="delta-pane">` +
    `<h3>${esc(delta.left_id)} vs ${esc(delta.right_id)}</h3>` +
    `<pre class="narrative">${esc(delta.narrative)}</pre>` +
    (cols ? `<div class="diff">${cols}</div>` : `<p class="diff-none">no sentence-level changes</p>`) +
    `</article>`
  );
}

export function renderComparison(comp: Comparison): string {
  const panes = comp.deltas.map(deltaPane).join("");
  const single =
    comp.deltas.length === 0
      ? `<p class="diff-none">Only one section qualified; nothing to compare.</p>`
      : "";
  return (
    `<section class="comparison">` +
    `<h2>Comparison</h2>` +
    `<p class="comparison-meta">${comp.items.length} sections in effective-date order</p>` +
    chainStrip(comp) +
    single +
    panes +
    `</section>`
  );
}
