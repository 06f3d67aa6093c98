/** Fetch client for the advisor service. The base URL is the one config knob. */

import type {
  CreateSessionPayload,
  PlacementPayload,
  RecommendationPayload,
  StatePayload,
  SummaryPayload,
} from './types';

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, init);
  if (!res.ok) {
    let code = 'http-error';
    let message = `${init?.method ?? 'GET'} ${url} failed: ${res.status}`;
    try {
      const body = await res.json();
      if (body?.error) {
        code = body.error.code;
        message = body.error.message;
      }
    } catch {
      // non-JSON error body; keep the generic message
    }
    throw new ApiError(res.status, code, message);
  }
  return res.json() as Promise<T>;
}

function postJson<T>(url: string, payload?: unknown): Promise<T> {
  return request<T>(url, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(payload ?? {}),
  });
}

export class AdvisorClient {
  constructor(private baseUrl: string) {}

  createSession(spec?: unknown): Promise<CreateSessionPayload> {
    return postJson(`${this.baseUrl}/sessions`, spec ? { spec } : {});
  }

  getSession(id: string): Promise<StatePayload> {
    return request(`${this.baseUrl}/sessions/${id}`);
  }

  submitRoll(id: string, roll: number): Promise<RecommendationPayload> {
    return postJson(`${this.baseUrl}/sessions/${id}/roll`, { roll });
  }

  commitPlacement(id: string, roll: number, slot: number): Promise<PlacementPayload> {
    return postJson(`${this.baseUrl}/sessions/${id}/placement`, { roll, slot });
  }

  finishSession(id: string): Promise<SummaryPayload> {
    return postJson(`${this.baseUrl}/sessions/${id}/finish`);
  }
}
