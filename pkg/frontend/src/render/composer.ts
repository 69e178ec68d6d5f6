/** Query Composer: the template-driven form. */

import { CLAUSE_LABELS, TASKS } from "../generated.js";
import type { QueryFormState } from "../validate.js";
import { formProblem, isClauseTask } from "../validate.js";
import { classes, esc } from "./html.js";

function entityInput(label: string, name: string, value: string): string {
  return (
    `<label class="field">` +
    `<span>${esc(label)}</span>` +
    `<input name="${esc(name)}" value="${esc(value)}" ` +
    `placeholder="exact or fuzzy name" autocomplete="off">` +
    `</label>`
  );
}

function taskSelect(current: string): string {
  const opts = TASKS.map(
    (t) => `<option value="${esc(t)}"${t === current ? " selected" : ""}>${esc(t)}</option>`,
  ).join("");
  return (
    `<label class="field"><span>Task</span>` +
    `<select name="task">${opts}</select></label>`
  );
}

function clauseSelect(current: string, enabled: boolean): string {
  const opts = [`<option value=""${current === "" ? " selected" : ""}>(pick a clause)</option>`]
    .concat(
      CLAUSE_LABELS.map(
        (l) =>
          `<option value="${esc(l)}"${l === current ? " selected" : ""}>${esc(l)}</option>`,
      ),
    )
    .join("");
  return (
    `<label class="${classes("field", "clause-field", !enabled && "hidden")}">` +
    `<span>Clause</span>` +
    `<select name="clause_label"${enabled ? "" : " disabled"}>${opts}</select>` +
    `</label>`
  );
}

export function renderComposer(form: QueryFormState, busy = false): string {
  const problem = formProblem(form);
  const submitDisabled = problem !== null || busy;
  const status = busy
    ? `<p class="form-status form-busy" id="form-status">Query in flight.</p>`
    : problem
      ? `<p class="form-status form-problem" id="form-status" data-locus="${esc(problem.locus ?? "")}">${esc(problem.message)}</p>`
      : `<p class="form-status form-ok" id="form-status">Ready to run.</p>`;
  return (
    `<section class="composer">` +
    `<h2>Compose a query</h2>` +
    `<form id="query-form" autocomplete="off">` +
    `<div class="entity-grid">` +
    entityInput("Fund", "fund", form.fund) +
    entityInput("Trust", "trust", form.trust) +
    entityInput("Custodian", "custodian", form.custodian) +
    `</div>` +
    `<div class="task-row">` +
    taskSelect(form.task) +
    clauseSelect(form.clause_label, isClauseTask(form.task)) +
    `</div>` +
    `<label class="field"><span>Planner hint</span>` +
    `<textarea name="hint" rows="2" ` +
    `placeholder="optional steering, e.g. sample counts">${esc(form.hint)}</textarea>` +
    `</label>` +
    status +
    `<button type="submit" id="submit-query"${submitDisabled ? " disabled" : ""}>Run query</button>` +
    `</form>` +
    `</section>`
  );
}
