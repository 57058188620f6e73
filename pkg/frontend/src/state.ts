import type { Judgment, SessionSnapshot } from './types.js';

export type ViewName = 'mosaic' | 'ranked' | 'graph' | 'groups' | 'albums';

/**
 * Client-side view state: the last server-acknowledged session snapshot plus
 * the user's pending (unsent) tile judgments. Pending judgments only ever
 * reference tiles of the currently visible mosaic; anything else is pruned
 * whenever a fresh snapshot is acknowledged.
 */
export class ViewState {
  sessionId: string | null = null;
  view: ViewName = 'mosaic';
  snapshot: SessionSnapshot | null = null;
  readonly pendingJudgments = new Map<string, Judgment>();

  acknowledge(snapshot: SessionSnapshot): void {
    this.sessionId = snapshot.id;
    this.snapshot = snapshot;
    const tiles = new Set(snapshot.mosaic?.tiles ?? []);
    for (const id of [...this.pendingJudgments.keys()]) {
      if (!tiles.has(id)) this.pendingJudgments.delete(id);
    }
  }

  /** Tri-state cycle: neutral -> positive -> negative -> neutral. */
  cycleJudgment(tileId: string): Judgment {
    const next: Record<Judgment, Judgment> = {
      neutral: 'positive',
      positive: 'negative',
      negative: 'neutral',
    };
    const updated = next[this.judgmentOf(tileId)];
    this.setJudgment(tileId, updated);
    return updated;
  }

  setJudgment(tileId: string, judgment: Judgment): void {
    const tiles = this.snapshot?.mosaic?.tiles ?? [];
    if (!tiles.includes(tileId)) {
      throw new Error(`${tileId} is not a visible mosaic tile`);
    }
    if (judgment === 'neutral') {
      this.pendingJudgments.delete(tileId);
    } else {
      this.pendingJudgments.set(tileId, judgment);
    }
  }

  judgmentOf(tileId: string): Judgment {
    return this.pendingJudgments.get(tileId) ?? 'neutral';
  }

  hasFeedback(): boolean {
    return this.pendingJudgments.size > 0;
  }

  takeJudgments(): Record<string, Judgment> {
    const out: Record<string, Judgment> = {};
    for (const [id, judgment] of this.pendingJudgments) out[id] = judgment;
    this.pendingJudgments.clear();
    return out;
  }
}
