import type { Api, RankedAction, WhatIfResult } from './api.js';
import { debounce } from './debounce.js';
import type { AssessmentState, ToggleValue } from './state.js';

export interface RiskView {
  whatif: WhatIfResult;
  actions: RankedAction[];
}

export interface ControllerHooks {
  onRisk(view: RiskView): void;
  onToggleRendered(key: string, value: ToggleValue): void;
  onError(message: string): void;
}

/**
 * Wires toggle events to debounced API refreshes with a last-writer-wins
 * staleness discipline: responses belonging to a superseded refresh are
 * dropped, so a toggle burst ends in exactly one consistent render.
 */
export class WhatIfController {
  private sequence = 0;
  private readonly refresh: () => void;

  constructor(
    private readonly api: Api,
    private readonly state: AssessmentState,
    private readonly hooks: ControllerHooks,
    debounceMs = 250,
  ) {
    this.refresh = debounce(() => void this.runRefresh(), debounceMs);
  }

  /** Cycle one toggle and schedule a (debounced) refresh. */
  toggle(key: string): void {
    const previous = this.state.get(key);
    const value = this.state.cycle(key);
    this.hooks.onToggleRendered(key, value);
    this.refreshSoon(key, previous);
  }

  private refreshSoon(key: string, previous: ToggleValue): void {
    this.lastChange = { key, previous };
    this.refresh();
  }

  private lastChange: { key: string; previous: ToggleValue } | null = null;

  private async runRefresh(): Promise<void> {
    const seq = ++this.sequence;
    const body = this.state.toBody();
    const change = this.lastChange;
    try {
      const [whatif, rank] = await Promise.all([this.api.whatIf(body), this.api.rank(body)]);
      if (seq !== this.sequence) return; // a newer toggle superseded us
      this.hooks.onRisk({ whatif, actions: rank.actions });
    } catch (err) {
      if (seq !== this.sequence) return;
      // reject means the current answers were refused: revert the last change
      if (change) {
        this.state.set(change.key, change.previous);
        this.hooks.onToggleRendered(change.key, change.previous);
      }
      this.hooks.onError(err instanceof Error ? err.message : String(err));
    }
  }
}
