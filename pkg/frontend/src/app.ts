/**
 * Single-page wiring: hash routes, form state, and service calls.
 *
 * Rendering itself lives in render/*; this module only decides what to
 * fetch, keeps the one QueryFormState, and enforces one in-flight query.
 */

import { Api, ApiError, apiBase } from "./api.js";
import { QueryGate } from "./inflight.js";
import type {
  AnswerEnvelope,
  ContractRow,
  ProblemDetail,
} from "./types.js";
import type { QueryFormState } from "./validate.js";
import {
  EMPTY_FORM,
  formProblem,
  formToBody,
  isClauseTask,
  prefillFromParties,
} from "./validate.js";
import type { FactsById } from "./render/answer.js";
import { renderAnswer } from "./render/answer.js";
import { renderProblem } from "./render/banner.js";
import { renderComparison } from "./render/comparison.js";
import { renderComposer } from "./render/composer.js";
import { renderContractDetail, renderContractList } from "./render/contracts.js";

type Route =
  | { view: "compose" }
  | { view: "answer" }
  | { view: "contracts" }
  | { view: "contract"; id: string; focus: number | null }
  | { view: "comparison" };

function parseRoute(hash: string): Route {
  const parts = hash.replace(/^#\/?/, "").split("/").filter(Boolean);
  if (parts[0] === "answer") return { view: "answer" };
  if (parts[0] === "comparison") return { view: "comparison" };
  if (parts[0] === "contracts") {
    const id = parts[1];
    if (!id) return { view: "contracts" };
    const focusPart = parts[2];
    const focus =
      focusPart && /^s\d+$/.test(focusPart)
        ? Number(focusPart.slice(1))
        : null;
    return { view: "contract", id: decodeURIComponent(id), focus };
  }
  return { view: "compose" };
}

class App {
  private readonly api: Api;
  private readonly gate = new QueryGate();
  private form: QueryFormState = { ...EMPTY_FORM };
  private answer: AnswerEnvelope | null = null;
  private lastProblem: { status: number; detail: ProblemDetail } | null = null;
  private facts: FactsById = {};
  private contracts: ContractRow[] | null = null;

  constructor(
    private readonly root: HTMLElement,
    base: string,
  ) {
    this.api = new Api(base);
  }

  start(): void {
    window.addEventListener("hashchange", () => this.render());
    this.root.addEventListener("submit", (ev) => {
      const form = ev.target as HTMLElement;
      if (form.id === "query-form") {
        ev.preventDefault();
        void this.runQuery();
      }
    });
    this.root.addEventListener("input", (ev) => this.syncField(ev));
    this.root.addEventListener("click", (ev) => this.handleClick(ev));
    void this.checkHealth();
    void this.loadContracts();
    this.render();
  }

  private async checkHealth(): Promise<void> {
    const el = document.getElementById("health");
    if (!el) return;
    try {
      const h = await this.api.health();
      el.textContent = `connected: ${h.contracts} contracts`;
      el.className = "health health-ok";
    } catch {
      el.textContent = `no service at ${this.api.base}`;
      el.className = "health health-down";
    }
  }

  private async loadContracts(): Promise<void> {
    try {
      this.contracts = await this.api.contracts();
      this.facts = {};
      for (const row of this.contracts) this.facts[row.contract_id] = row;
      const route = parseRoute(location.hash);
      if (route.view === "contracts") this.render();
    } catch {
      this.contracts = null; // banner shows when the browser view is opened
    }
  }

  // -- form state --------------------------------------------------------

  private syncField(ev: Event): void {
    const el = ev.target as HTMLInputElement | HTMLSelectElement | HTMLTextAreaElement;
    const name = el.name;
    if (!name) return;
    if (name === "task") {
      this.form.task = el.value;
      if (!isClauseTask(el.value)) this.form.clause_label = "";
      this.render(); // clause selector visibility changes with the task
      return;
    }
    if (name === "fund" || name === "trust" || name === "custodian") {
      this.form[name] = el.value;
    } else if (name === "clause_label") {
      this.form.clause_label = el.value;
    } else if (name === "hint") {
      this.form.hint = el.value;
    }
    this.refreshFormStatus();
  }

  /** Patch validity in place so typing never rebuilds (and blurs) the form. */
  private refreshFormStatus(): void {
    const status = document.getElementById("form-status");
    const submit = document.getElementById("submit-query") as HTMLButtonElement | null;
    const problem = formProblem(this.form);
    if (status) {
      if (this.gate.busy) {
        status.className = "form-status form-busy";
        status.textContent = "Query in flight.";
      } else if (problem) {
        status.className = "form-status form-problem";
        status.textContent = problem.message;
      } else {
        status.className = "form-status form-ok";
        status.textContent = "Ready to run.";
      }
    }
    if (submit) submit.disabled = problem !== null || this.gate.busy;
  }

  // -- actions -------------------------------------------------------------

  private async runQuery(): Promise<void> {
    if (this.gate.busy) return; // one in-flight query per tab
    if (formProblem(this.form)) return;
    const ticket = this.gate.begin();
    this.refreshFormStatus();
    try {
      const envelope = await this.api.query(formToBody(this.form));
      if (!this.gate.accept(ticket)) return; // stale; a newer query landed
      this.answer = envelope;
      this.lastProblem = null;
      location.hash = "#/answer";
      this.render();
    } catch (err) {
      if (!this.gate.accept(ticket)) return;
      this.lastProblem =
        err instanceof ApiError
          ? { status: err.status, detail: err.problem }
          : { status: 0, detail: { code: "E_CLIENT", message: String(err) } };
      this.answer = null;
      location.hash = "#/answer";
      this.render();
    }
  }

  private handleClick(ev: Event): void {
    const target = (ev.target as HTMLElement).closest<HTMLElement>(
      "[data-contract], [data-prefill]",
    );
    if (!target) return;
    const cid = target.dataset.contract ?? target.dataset.prefill;
    if (!cid || target.classList.contains("citation")) return;
    ev.preventDefault();
    void this.prefill(cid);
  }

  /** Contract click: carry its parties into the composer for a follow-up. */
  private async prefill(contractId: string): Promise<void> {
    try {
      const detail = await this.api.contract(contractId);
      this.form = prefillFromParties(this.form, detail.parties);
      location.hash = "#/compose";
      this.render();
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastProblem = { status: err.status, detail: err.problem };
        this.render();
      }
    }
  }

  private async openContract(id: string, focus: number | null): Promise<void> {
    try {
      const [detail, sections] = await Promise.all([
        this.api.contract(id),
        this.api.sections(id),
      ]);
      this.root.innerHTML = renderContractDetail(detail, sections, focus);
      if (focus !== null) {
        document.getElementById(`sec-${focus}`)?.scrollIntoView({ block: "start" });
      }
    } catch (err) {
      if (err instanceof ApiError) {
        this.root.innerHTML = renderProblem(err.problem, err.status);
      }
    }
  }

  // -- rendering -----------------------------------------------------------

  private render(): void {
    const route = parseRoute(location.hash);
    this.markNav(route.view);
    switch (route.view) {
      case "compose":
        this.root.innerHTML = renderComposer(this.form, this.gate.busy);
        return;
      case "answer": {
        if (this.lastProblem) {
          this.root.innerHTML = renderProblem(
            this.lastProblem.detail,
            this.lastProblem.status,
          );
          return;
        }
        this.root.innerHTML = this.answer
          ? renderAnswer(this.answer, this.facts)
          : `<p class="placeholder">No answer yet. Compose a query first.</p>`;
        return;
      }
      case "contracts":
        this.root.innerHTML = this.contracts
          ? renderContractList(this.contracts)
          : `<p class="placeholder">Contract list is not loaded; is the service up?</p>`;
        return;
      case "contract":
        this.root.innerHTML = `<p class="placeholder">loading ${route.id}&hellip;</p>`;
        void this.openContract(route.id, route.focus);
        return;
      case "comparison":
        this.root.innerHTML = this.answer?.comparison
          ? renderComparison(this.answer.comparison)
          : `<p class="placeholder">No comparison yet. Run a compare_clause query first.</p>`;
        return;
    }
  }

  private markNav(view: Route["view"]): void {
    for (const link of document.querySelectorAll<HTMLElement>("nav.top a")) {
      const match =
        link.dataset.view === view ||
        (link.dataset.view === "contracts" && view === "contract");
      link.classList.toggle("active", match);
    }
  }
}

const rootEl = document.getElementById("app");
if (rootEl) {
  new App(rootEl, apiBase(location.search)).start();
}
