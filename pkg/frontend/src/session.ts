import { HttpError, type ApiClient } from "./api.js";
import type {
  Answer,
  AnswerResponse,
  PosteriorEntry,
  Question,
  SessionCreated,
  TeachFact,
} from "./types.js";

export type Phase = "idle" | "asking" | "guessed" | "done";

export interface TranscriptRow {
  question: string;
  feature: string;
  answer: Answer;
}

export interface SessionState {
  phase: Phase;
  sessionId: string | null;
  question: Question | null;
  guess: { concept: string; prob: number } | null;
  posterior: PosteriorEntry[];
  transcript: TranscriptRow[];
  budget: number | null;
  inFlight: boolean;
  banner: string | null; // non-blocking error notice; null when healthy
  contradiction: boolean;
  matrixVersion: number | null;
}

export function initialState(): SessionState {
  return {
    phase: "idle",
    sessionId: null,
    question: null,
    guess: null,
    posterior: [],
    transcript: [],
    budget: null,
    inFlight: false,
    banner: null,
    contradiction: false,
    matrixVersion: null,
  };
}

// Mirrors the server's session states; the server is the source of truth
// and every number shown comes from its responses.
export class SessionStore {
  state: SessionState = initialState();

  constructor(
    private api: ApiClient,
    private onChange: (state: SessionState) => void = () => {},
  ) {}

  private emit() {
    this.onChange(this.state);
  }

  canAnswer(): boolean {
    return this.state.phase === "asking" && !this.state.inFlight;
  }

  async create(): Promise<void> {
    if (this.state.inFlight) return;
    this.state = { ...initialState(), inFlight: true };
    this.emit();
    try {
      const created: SessionCreated = await this.api.createSession();
      this.state = {
        ...this.state,
        phase: "asking",
        sessionId: created.session_id,
        question: created.question,
        posterior: created.posterior_top,
        budget: created.budget,
        inFlight: false,
        banner: null,
      };
    } catch (error) {
      this.state = {
        ...this.state,
        inFlight: false,
        banner: describeError(error, "could not start a session"),
      };
    }
    this.emit();
  }

  async answer(answer: Answer): Promise<void> {
    if (!this.canAnswer() || !this.state.sessionId || !this.state.question) return;
    const sessionId = this.state.sessionId;
    const asked = this.state.question;
    this.state = { ...this.state, inFlight: true };
    this.emit();
    try {
      const resp: AnswerResponse = await this.api.answer(sessionId, answer);
      const transcript = [
        ...this.state.transcript,
        { question: asked.text, feature: asked.feature, answer },
      ];
      this.state = {
        ...this.state,
        phase: resp.state,
        question: resp.question ?? null,
        guess: resp.guess ?? null,
        posterior: resp.posterior_top,
        transcript,
        budget: resp.budget,
        contradiction: resp.contradiction,
        inFlight: false,
        banner: null,
      };
    } catch (error) {
      const conflict = error instanceof HttpError && error.status === 409;
      this.state = {
        ...this.state,
        inFlight: false,
        banner: conflict
          ? "answer already submitted; waiting for the server"
          : describeError(error, "answer failed"),
      };
    }
    this.emit();
  }

  async teach(concept: string, facts: TeachFact[]): Promise<void> {
    if (this.state.phase !== "guessed" || !this.state.sessionId || this.state.inFlight) {
      return;
    }
    const sessionId = this.state.sessionId;
    this.state = { ...this.state, inFlight: true };
    this.emit();
    try {
      const resp = await this.api.teach(sessionId, concept, facts);
      this.state = {
        ...this.state,
        phase: resp.state,
        matrixVersion: resp.matrix_version,
        inFlight: false,
        banner: null,
      };
    } catch (error) {
      this.state = {
        ...this.state,
        inFlight: false,
        banner: describeError(error, "teach failed"),
      };
    }
    this.emit();
  }
}

export function describeError(error: unknown, fallback: string): string {
  if (error instanceof HttpError) {
    return `${fallback}: ${error.message} (${error.code})`;
  }
  if (error instanceof Error && error.message) {
    return `${fallback}: ${error.message}; retry when the server is reachable`;
  }
  return `${fallback}; retry when the server is reachable`;
}
