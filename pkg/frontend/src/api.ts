import type {
  Answer,
  AnswerResponse,
  SessionCreated,
  TeachFact,
  TeachResponse,
  WsdResponse,
} from "./types.js";

// The stores depend on this interface; tests inject a scripted mock.
export interface ApiClient {
  createSession(): Promise<SessionCreated>;
  answer(sessionId: string, answer: Answer): Promise<AnswerResponse>;
  teach(sessionId: string, concept: string, facts: TeachFact[]): Promise<TeachResponse>;
  wsd(text: string): Promise<WsdResponse>;
}

export class HttpError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    let code = "error";
    let message = response.statusText;
    try {
      const body = await response.json();
      code = body.code ?? code;
      message = body.message ?? message;
    } catch {
      // non-JSON error body: keep the status text
    }
    throw new HttpError(response.status, code, message);
  }
  return response.json() as Promise<T>;
}

export class HttpApiClient implements ApiClient {
  constructor(private base: string = "") {}

  createSession(): Promise<SessionCreated> {
    return request(`${this.base}/v1/sessions`, {
      method: "POST",
      body: JSON.stringify({}),
    });
  }

  answer(sessionId: string, answer: Answer): Promise<AnswerResponse> {
    return request(`${this.base}/v1/sessions/${sessionId}/answer`, {
      method: "POST",
      body: JSON.stringify({ answer }),
    });
  }

  teach(sessionId: string, concept: string, facts: TeachFact[]): Promise<TeachResponse> {
    return request(`${this.base}/v1/sessions/${sessionId}/teach`, {
      method: "POST",
      body: JSON.stringify({ concept, facts }),
    });
  }

  wsd(text: string): Promise<WsdResponse> {
    return request(`${this.base}/v1/wsd`, {
      method: "POST",
      body: JSON.stringify({ text }),
    });
  }
}
