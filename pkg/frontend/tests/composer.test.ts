import { describe, expect, it } from "vitest";

import { renderComposer } from "../src/render/composer.js";
import { EMPTY_FORM } from "../src/validate.js";

describe("Query Composer", () => {
  it("renders the default form with submit disabled (no entities yet)", () => {
    const html = renderComposer({ ...EMPTY_FORM });
    expect(html).toContain('id="submit-query" disabled');
    expect(html).toContain("at least one entity must be given");
    expect(html).toMatchSnapshot();
  });

  it("enables submit once an entity is present", () => {
    const html = renderComposer({ ...EMPTY_FORM, fund: "Alpha Fund" });
    expect(html).toContain('<button type="submit" id="submit-query">');
    expect(html).toContain("form-ok");
  });

  it("hides and disables the clause selector for non-clause tasks", () => {
    const html = renderComposer({ ...EMPTY_FORM, task: "find_parties", fund: "A" });
    expect(html).toContain('class="field clause-field hidden"');
    expect(html).toContain('<select name="clause_label" disabled>');
  });

  it("enables the clause selector for clause tasks and requires a label", () => {
    const html = renderComposer({ ...EMPTY_FORM, task: "find_clause", fund: "A" });
    expect(html).toContain('class="field clause-field"');
    expect(html).toContain('<select name="clause_label">');
    expect(html).toContain('id="submit-query" disabled');
    expect(html).toContain('data-locus="clause_label"');
  });

  it("accepts a full compare form", () => {
    const html = renderComposer({
      task: "compare_clause",
      fund: "BNY Mellon International Equity Income Fund",
      trust: "",
      custodian: "",
      clause_label: "authorized persons",
      hint: "Only compare subsequent clauses of five sampled non-empty contract sections.",
    });
    expect(html).toContain('<button type="submit" id="submit-query">');
    expect(html).toContain('<option value="authorized persons" selected>');
    expect(html).toMatchSnapshot();
  });

  it("disables submit while a query is in flight", () => {
    const html = renderComposer({ ...EMPTY_FORM, fund: "Alpha Fund" }, true);
    expect(html).toContain('id="submit-query" disabled');
    expect(html).toContain("Query in flight.");
  });

  it("escapes user-typed values", () => {
    const html = renderComposer({ ...EMPTY_FORM, fund: '<script>"x"</script>' });
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;&quot;x&quot;&lt;/script&gt;");
  });
});
