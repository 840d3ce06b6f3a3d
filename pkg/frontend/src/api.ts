// Typed client for the driftnet HTTP API. The UI never computes
// probabilities itself: every displayed number comes from these calls.

export interface CellInfo {
  cell: string;
  chronology: string;
  invariant: string;
}

export interface DriftFactor {
  id: string;
  label: string;
  cell: string;
  domain: string;
}

export interface ModelDescriptor {
  cells: CellInfo[];
  domains: string[];
  levels: number;
  questions: Record<string, string>;
  drift_factors: DriftFactor[];
  bands: string[];
  target: string;
  provenance: Record<string, unknown>;
}

export type Answer = 'Yes' | 'No';

export interface AssessmentBody {
  answers: Record<string, Answer>;
}

export interface WhatIfResult {
  overcost: Record<string, number>;
  drift_risks: Record<string, number>;
  evidence: Record<string, string>;
}

export interface RankedAction {
  question: string;
  delta: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let message = `HTTP ${response.status}`;
    try {
      const body = await response.json();
      if (body && typeof body.error === 'string') message = body.error;
    } catch {
      // non-JSON error body; keep the status message
    }
    throw new ApiError(response.status, message);
  }
  return response.json() as Promise<T>;
}

export function createApi(baseUrl: string, fetchFn: FetchLike = (...a) => fetch(...a)) {
  const json = { 'Content-Type': 'application/json' };
  return {
    async getModel(): Promise<ModelDescriptor> {
      return parseOrThrow(await fetchFn(`${baseUrl}/model`));
    },
    async whatIf(body: AssessmentBody): Promise<WhatIfResult> {
      return parseOrThrow(
        await fetchFn(`${baseUrl}/whatif`, { method: 'POST', headers: json, body: JSON.stringify(body) }),
      );
    },
    async rank(body: AssessmentBody): Promise<{ actions: RankedAction[] }> {
      return parseOrThrow(
        await fetchFn(`${baseUrl}/rank`, { method: 'POST', headers: json, body: JSON.stringify(body) }),
      );
    },
  };
}

export type Api = ReturnType<typeof createApi>;
