import { describe, expect, it } from "vitest";

import { renderComparison } from "../src/render/comparison.js";
import type { AnswerEnvelope, Comparison } from "../src/types.js";
import compareEnvelope from "./fixtures/compare_envelope.json";

const envelope = compareEnvelope as unknown as AnswerEnvelope;
const comparison = envelope.comparison as Comparison;

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("Comparison View", () => {
  it("renders one pane per delta: four panes for five sampled sections", () => {
    expect(comparison.items).toHaveLength(5);
    expect(comparison.deltas).toHaveLength(4);
    const html = renderComparison(comparison);
    expect(count(html, 'class="delta-pane"')).toBe(4);
  });

  it("keeps the chain chronological and links panes to adjacent items", () => {
    const html = renderComparison(comparison);
    const ids = comparison.items.map((it) => it.contract_id);
    // the chain strip lists items in envelope order (effective-date order)
    let cursor = -1;
    for (const id of ids) {
      const at = html.indexOf(`<span class="chain-id">${id}</span>`);
      expect(at).toBeGreaterThan(cursor);
      cursor = at;
    }
    comparison.deltas.forEach((d, i) => {
      expect(d.left_id).toBe(ids[i]);
      expect(d.right_id).toBe(ids[i + 1]);
      expect(html).toContain(`<h3>${d.left_id} vs ${d.right_id}</h3>`);
    });
  });

  it("shows each delta's narrative and sentence diff verbatim", () => {
    const html = renderComparison(comparison);
    for (const d of comparison.deltas) {
      const firstLine = (d.narrative.split("\n")[0] ?? "").trim();
      if (firstLine) {
        expect(html).toContain(firstLine.slice(0, 60));
      }
    }
    expect(html).toMatchSnapshot();
  });

  it("renders a single-item chain as nothing-to-compare", () => {
    const single: Comparison = {
      items: [{ contract_id: "f009c0", effective: "01/01/2001", ordinal: 3 }],
      deltas: [],
    };
    const html = renderComparison(single);
    expect(count(html, 'class="delta-pane"')).toBe(0);
    expect(html).toContain("nothing to compare");
  });
});
