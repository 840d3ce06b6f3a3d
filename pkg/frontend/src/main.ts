import { createApi } from './api.js';
import { WhatIfController } from './controller.js';
import { renderError, renderGrid, renderToggle, renderWhatIf } from './render.js';
import { AssessmentState, panelsFromDescriptor } from './state.js';

const API_BASE =
  new URLSearchParams(location.search).get('api') ?? 'http://127.0.0.1:8348';

const el = (id: string) => document.getElementById(id)!;

async function boot(): Promise<void> {
  const api = createApi(API_BASE);
  const banner = el('banner');
  renderError(banner, null);
  let model;
  try {
    model = await api.getModel();
  } catch (err) {
    renderError(banner, `Cannot reach the driftnet API at ${API_BASE}: ${err}`, () => void boot());
    return;
  }

  const panels = panelsFromDescriptor(model);
  const state = new AssessmentState(Object.keys(model.questions));
  const grid = el('grid');

  const controller = new WhatIfController(api, state, {
    onRisk: ({ whatif, actions }) => {
      renderError(banner, null);
      renderWhatIf(el('bands'), el('drifts'), el('actions'), model!, whatif, actions);
    },
    onToggleRendered: (key, value) => renderToggle(grid, key, value),
    onError: (message) => renderError(banner, message),
  });

  renderGrid(grid, panels, (key) => controller.toggle(key));

  // initial, evidence-free render
  const [whatif, rank] = await Promise.all([api.whatIf({ answers: {} }), api.rank({ answers: {} })]);
  renderWhatIf(el('bands'), el('drifts'), el('actions'), model, whatif, rank.actions);
}

void boot();
