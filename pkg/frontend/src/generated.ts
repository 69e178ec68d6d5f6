// GENERATED by scripts/make_fixtures.py; do not edit by hand.
// The form vocabulary, copied verbatim from the service.

export const TASKS = ["explore_all", "find_master_agreements", "find_master_dates", "find_termination_dates", "find_parties", "find_clause", "summarize_clause", "compare_clause"] as const;
export const CLAUSE_TASKS = ["find_clause", "summarize_clause", "compare_clause"] as const;
export const ENTITY_KEYS = ["fund", "trust", "custodian"] as const;
export const CLAUSE_LABELS = ["account transactions", "authorized persons", "definitions", "duties and responsibilities", "evidence of authority", "fee schedule", "fees and expenses", "foreign custodian and subcustodian", "governing law", "indemnification", "instructions", "limitations and scope of use or liability", "miscellaneous", "nominees", "proprietary information", "recitals", "standard of care liabilities", "subcustodians and securities depositories", "successor custodian", "termination"] as const;
