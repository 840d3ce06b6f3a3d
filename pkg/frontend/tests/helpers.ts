import type { ModelDescriptor, WhatIfResult } from '../src/api.js';

export function smallDescriptor(): ModelDescriptor {
  const questions: Record<string, string> = {};
  for (const panel of ['MR.Contract', 'PA.Results']) {
    for (let level = 1; level <= 5; level++) {
      questions[`${panel}.LV${level}`] = `question ${panel} level ${level}`;
    }
  }
  return {
    cells: [
      { cell: 'MR', chronology: 'Monitor', invariant: 'Resources' },
      { cell: 'PA', chronology: 'Prepare', invariant: 'Actions' },
    ],
    domains: ['Contract', 'Results'],
    levels: 5,
    questions,
    drift_factors: [
      { id: '1.2', label: 'late delivery', cell: 'MR', domain: 'Contract' },
      { id: '2.1', label: 'bad tender estimate', cell: 'PA', domain: 'Results' },
    ],
    bands: ['P_1', 'P_1_10', 'P_10_100', 'P_100'],
    target: 'overcost',
    provenance: {},
  };
}

export interface MockServer {
  fetch: (input: string, init?: RequestInit) => Promise<Response>;
  calls: { url: string; body: unknown }[];
  callsTo(path: string): { url: string; body: unknown }[];
}

/**
 * Stateless fake of the HTTP API: what-if answers are derived from the
 * request body alone, mirroring the real service's contract.
 */
export function mockServer(
  descriptor: ModelDescriptor,
  whatIf: (answers: Record<string, string>) => WhatIfResult = defaultWhatIf,
): MockServer {
  const calls: { url: string; body: unknown }[] = [];
  const respond = (payload: unknown, status = 200) =>
    new Response(JSON.stringify(payload), {
      status,
      headers: { 'Content-Type': 'application/json' },
    });

  return {
    calls,
    callsTo(path: string) {
      return calls.filter((c) => c.url.endsWith(path));
    },
    async fetch(url: string, init?: RequestInit) {
      const body = init?.body ? JSON.parse(String(init.body)) : undefined;
      calls.push({ url, body });
      if (url.endsWith('/model')) return respond(descriptor);
      if (url.endsWith('/whatif')) {
        const answers = (body?.answers ?? {}) as Record<string, string>;
        for (const key of Object.keys(answers)) {
          if (!(key in descriptor.questions)) {
            return respond({ error: `unknown question ${key}` }, 400);
          }
        }
        return respond(whatIf(answers));
      }
      if (url.endsWith('/rank')) {
        return respond({ actions: [{ question: 'MR.Contract.LV1', delta: 0.1 }] });
      }
      return respond({ error: 'not found' }, 404);
    },
  };
}

export function defaultWhatIf(answers: Record<string, string>): WhatIfResult {
  const yesCount = Object.values(answers).filter((v) => v === 'Yes').length;
  const total = Object.keys(smallDescriptor().questions).length;
  const allYes = yesCount === total;
  const risk = allYes ? 0 : 1 - yesCount / (total + 1);
  const p100 = 0.1 + 0.5 * risk;
  const rest = (1 - p100) / 3;
  return {
    overcost: { P_1: rest, P_1_10: rest, P_10_100: rest, P_100: p100 },
    drift_risks: { '1.2': risk, '2.1': risk },
    evidence: { ...answers },
  };
}
