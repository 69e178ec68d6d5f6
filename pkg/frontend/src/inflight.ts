/**
 * One in-flight query per tab.
 *
 * Every submission takes a ticket; a response is applied only if its ticket
 * is still the current one. A later submission supersedes an earlier ticket,
 * so a slow stale response can never overwrite a newer answer.
 */

export class QueryGate {
  private seq = 0;
  private current: number | null = null;

  /** Start a flight; any earlier ticket becomes stale. */
  begin(): number {
    this.seq += 1;
    this.current = this.seq;
    return this.seq;
  }

  /**
   * Try to land a response. True exactly once, for the newest ticket;
   * stale or already-settled tickets are refused.
   */
  accept(ticket: number): boolean {
    if (ticket !== this.current) return false;
    this.current = null;
    return true;
  }

  get busy(): boolean {
    return this.current !== null;
  }

  /** Abandon the current flight (its response will be refused). */
  cancel(): void {
    this.current = null;
  }
}
