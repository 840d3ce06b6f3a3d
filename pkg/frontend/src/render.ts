import type { ModelDescriptor, RankedAction, WhatIfResult } from './api.js';
import type { PanelSpec, ToggleValue } from './state.js';

const TOGGLE_LABEL: Record<string, string> = { Yes: 'Yes', No: 'No', null: '—' };

export function toggleLabel(value: ToggleValue): string {
  return TOGGLE_LABEL[String(value)];
}

export function renderGrid(
  container: HTMLElement,
  panels: PanelSpec[],
  onToggle: (key: string) => void,
): void {
  container.innerHTML = '';
  if (panels.length === 0) {
    const warning = document.createElement('p');
    warning.className = 'warning';
    warning.textContent = 'The loaded model references no maturity questions.';
    container.appendChild(warning);
    return;
  }
  for (const panel of panels) {
    const box = document.createElement('section');
    box.className = 'panel';
    box.dataset.panel = `${panel.cell}.${panel.domain}`;
    const title = document.createElement('h3');
    title.textContent = `${panel.cell} · ${panel.domain}`;
    box.appendChild(title);
    if (panel.drifts.length) {
      const sub = document.createElement('p');
      sub.className = 'panel-drifts';
      sub.textContent = `drifts: ${panel.drifts.join(', ')}`;
      box.appendChild(sub);
    }
    for (const question of panel.questions) {
      const row = document.createElement('div');
      row.className = 'question';
      const button = document.createElement('button');
      button.dataset.key = question.key;
      button.className = 'toggle unanswered';
      button.textContent = toggleLabel(null);
      button.title = question.text;
      button.addEventListener('click', () => onToggle(question.key));
      const label = document.createElement('span');
      label.textContent = `LV${question.level}`;
      row.append(button, label);
      box.appendChild(row);
    }
    container.appendChild(box);
  }
}

export function renderToggle(container: HTMLElement, key: string, value: ToggleValue): void {
  // question keys are dot-separated tokens; quote-escaping suffices here
  const selector = `button[data-key="${key.replace(/\\/g, '\\\\').replace(/"/g, '\\"')}"]`;
  const button = container.querySelector<HTMLButtonElement>(selector);
  if (!button) return;
  button.textContent = toggleLabel(value);
  button.className = `toggle ${value === null ? 'unanswered' : value.toLowerCase()}`;
}

export function renderBands(container: HTMLElement, bands: string[], overcost: Record<string, number>): void {
  container.innerHTML = '';
  for (const band of bands) {
    const value = overcost[band] ?? 0;
    const row = document.createElement('div');
    row.className = 'band-row';
    const name = document.createElement('span');
    name.className = 'band-name';
    name.textContent = band;
    const bar = document.createElement('div');
    bar.className = 'band-bar';
    const fill = document.createElement('div');
    fill.className = 'band-fill';
    fill.style.width = `${(value * 100).toFixed(1)}%`;
    fill.dataset.band = band;
    fill.dataset.value = String(value);
    bar.appendChild(fill);
    const pct = document.createElement('span');
    pct.className = 'band-pct';
    pct.textContent = `${(value * 100).toFixed(1)}%`;
    row.append(name, bar, pct);
    container.appendChild(row);
  }
}

export function renderDriftRisks(
  container: HTMLElement,
  model: ModelDescriptor,
  risks: Record<string, number>,
): void {
  container.innerHTML = '';
  const labels = new Map(model.drift_factors.map((d) => [d.id, d.label]));
  const entries = Object.entries(risks).sort((a, b) => b[1] - a[1] || a[0].localeCompare(b[0]));
  for (const [id, risk] of entries) {
    const row = document.createElement('div');
    row.className = 'drift-row';
    row.dataset.drift = id;
    row.dataset.risk = String(risk);
    const pct = `${(risk * 100).toFixed(1)}%`;
    row.textContent = `${id} ${labels.get(id) ?? ''} — ${pct}`;
    container.appendChild(row);
  }
}

export function renderActions(container: HTMLElement, actions: RankedAction[]): void {
  container.innerHTML = '';
  if (!actions.length) {
    const done = document.createElement('p');
    done.textContent = 'Every practice is already in place.';
    container.appendChild(done);
    return;
  }
  const list = document.createElement('ol');
  for (const action of actions.slice(0, 10)) {
    const item = document.createElement('li');
    item.dataset.question = action.question;
    item.textContent = `${action.question} (−${(action.delta * 100).toFixed(2)} pp tail risk)`;
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderWhatIf(
  bandsEl: HTMLElement,
  driftsEl: HTMLElement,
  actionsEl: HTMLElement,
  model: ModelDescriptor,
  whatif: WhatIfResult,
  actions: RankedAction[],
): void {
  renderBands(bandsEl, model.bands, whatif.overcost);
  renderDriftRisks(driftsEl, model, whatif.drift_risks);
  renderActions(actionsEl, actions);
}

export function renderError(banner: HTMLElement, message: string | null, onRetry?: () => void): void {
  banner.innerHTML = '';
  if (message === null) {
    banner.hidden = true;
    return;
  }
  banner.hidden = false;
  const text = document.createElement('span');
  text.textContent = message;
  banner.appendChild(text);
  if (onRetry) {
    const retry = document.createElement('button');
    retry.textContent = 'Retry';
    retry.addEventListener('click', onRetry);
    banner.appendChild(retry);
  }
}
