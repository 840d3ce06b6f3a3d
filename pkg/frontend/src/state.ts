import type { Answer, AssessmentBody, ModelDescriptor } from './api.js';

export type ToggleValue = Answer | null; // null = unanswered, sends no evidence

export interface PanelSpec {
  cell: string;
  domain: string;
  drifts: string[]; // drift factors governed by this (cell, domain) pair
  questions: { key: string; level: number; text: string }[];
}

/** Tri-state assessment the user edits; keys are question keys. */
export class AssessmentState {
  private values = new Map<string, ToggleValue>();
  dirty = false;

  constructor(questionKeys: string[]) {
    for (const key of questionKeys) this.values.set(key, null);
  }

  get(key: string): ToggleValue {
    return this.values.get(key) ?? null;
  }

  set(key: string, value: ToggleValue): void {
    if (!this.values.has(key)) throw new Error(`unknown question ${key}`);
    this.values.set(key, value);
    this.dirty = true;
  }

  /** Unanswered -> Yes -> No -> Unanswered. Returns the new value. */
  cycle(key: string): ToggleValue {
    const next: ToggleValue = this.get(key) === null ? 'Yes' : this.get(key) === 'Yes' ? 'No' : null;
    this.set(key, next);
    return next;
  }

  keys(): string[] {
    return [...this.values.keys()];
  }

  /** Only answered questions become evidence. */
  toBody(): AssessmentBody {
    const answers: Record<string, Answer> = {};
    for (const [key, value] of this.values) {
      if (value !== null) answers[key] = value;
    }
    return { answers };
  }
}

/** Group the descriptor's questions into one panel per referenced (cell, domain). */
export function panelsFromDescriptor(model: ModelDescriptor): PanelSpec[] {
  const panels = new Map<string, PanelSpec>();
  for (const [key, text] of Object.entries(model.questions)) {
    const [cell, domain, lv] = key.split('.');
    const id = `${cell}.${domain}`;
    if (!panels.has(id)) panels.set(id, { cell, domain, drifts: [], questions: [] });
    panels.get(id)!.questions.push({ key, level: Number(lv.slice(2)), text });
  }
  for (const drift of model.drift_factors) {
    panels.get(`${drift.cell}.${drift.domain}`)?.drifts.push(drift.id);
  }
  const ordered = [...panels.values()];
  for (const panel of ordered) panel.questions.sort((a, b) => a.level - b.level);
  ordered.sort((a, b) => (a.cell + a.domain).localeCompare(b.cell + b.domain));
  return ordered;
}
