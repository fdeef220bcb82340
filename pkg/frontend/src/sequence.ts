/** Request sequence numbers: responses apply monotonically, so a response
 * that arrives after a newer one has been applied is discarded as stale. */

export class SequenceGuard {
  private issued = 0;
  private applied = 0;

  next(): number {
    return ++this.issued;
  }

  /** True if this ticket's response is still current; marks it applied. */
  accept(ticket: number): boolean {
    if (ticket <= this.applied) return false;
    this.applied = ticket;
    return true;
  }
}
