/**
 * Wire shapes of the lawflow HTTP service.
 *
 * These mirror the JSON the service actually emits. The UI renders these
 * fields and nothing else; it never derives new facts from them.
 */

export interface ProblemDetail {
  code: string;
  message: string;
  locus?: string | null;
}

/** Body accepted by POST /query. */
export interface QueryBody {
  task: string;
  entities: Record<string, string>;
  clause_label?: string;
  hint?: string;
}

export interface Diagnostic {
  code: string;
  message: string;
  locus: string;
  suggestion?: string;
}

export interface ValidationReport {
  tier: string;
  passed: boolean;
  diagnostics: Diagnostic[];
}

export interface TraceEntry {
  tool: string;
  args: Record<string, string>;
  duration_ms: number;
  outcome: string;
}

export interface Attempt {
  source: string;
  reports: ValidationReport[];
  trace: TraceEntry[];
}

export interface ComparisonItem {
  contract_id: string;
  effective: string; // DD/MM/YYYY
  ordinal: number;
}

export interface SentenceDiff {
  only_left: string[];
  only_right: string[];
  changed_literals: [string, string][];
}

export interface ComparisonDelta {
  left_id: string;
  right_id: string;
  narrative: string;
  diff: SentenceDiff;
}

export interface Comparison {
  items: ComparisonItem[];
  deltas: ComparisonDelta[];
}

/** A section carried inline in a result (find_clause). */
export interface SectionPayload {
  contract_id: string;
  ordinal: number;
  title_label: string;
  heading_text: string;
  body_text: string;
}

export interface Citation {
  contract_id: string;
  ordinal: number;
}

export type ResultKind =
  | "text"
  | "empty"
  | "sections"
  | "contract_pairs"
  | "date_pairs"
  | "string_pairs"
  | "value";

export interface AnswerEnvelope {
  query: QueryBody;
  result: unknown;
  result_kind: ResultKind;
  plan_source: string;
  reports: ValidationReport[];
  trace: TraceEntry[];
  citations: Citation[];
  attempts: Attempt[];
  comparison?: Comparison;
}

export interface PartyRef {
  role: string;
  name: string;
}

/** One row of GET /contracts. Cache fields are the CSV strings, verbatim. */
export interface ContractRow {
  contract_id: string;
  sections: number;
  accession_no?: string;
  effective_date?: string;
  master_date?: string;
  termination_date?: string;
  evergreen?: string;
  is_master?: string;
  master_id?: string;
  parties?: PartyRef[];
}

export interface SectionSpanMeta {
  ordinal: number;
  heading_text: string;
  title_label: string;
  start_offset: number;
  end_offset: number;
}

export interface ContractDetail {
  contract_id: string;
  accession_no: string;
  source_uri: string;
  filed_date: string;
  cache_row: string[] | null;
  parties: PartyRef[];
  sections: SectionSpanMeta[];
}

/** One row of GET /contracts/{id}/sections. */
export interface SectionBody {
  ordinal: number;
  heading_text: string;
  title_label: string;
  body_text: string;
  score?: number;
}

export interface Health {
  status: string;
  contracts: number;
}
