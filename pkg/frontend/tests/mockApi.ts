import type { ApiClient } from "../src/api.js";
import type {
  Answer,
  AnswerResponse,
  SessionCreated,
  TeachFact,
  TeachResponse,
  WsdResponse,
} from "../src/types.js";

// Scripted mock mirroring the real server's /v1 bodies for a four-question
// game about animals. Every response handed out is recorded so tests can
// diff displayed numbers against response payloads.

const QUESTIONS = [
  { feature: "has_fur", text: "Does it have fur?" },
  { feature: "lives_in_water", text: "Does it live in water?" },
  { feature: "is_pet", text: "Is it commonly kept as a pet?" },
  { feature: "is_large", text: "Is it larger than a person?" },
];

const POSTERIORS = [
  [
    { concept: "cat", prob: 0.125 },
    { concept: "dog", prob: 0.125 },
    { concept: "eagle", prob: 0.125 },
    { concept: "goldfish", prob: 0.125 },
    { concept: "horse", prob: 0.125 },
    { concept: "mouse", prob: 0.125 },
    { concept: "shark", prob: 0.125 },
    { concept: "snake", prob: 0.125 },
  ],
  [
    { concept: "eagle", prob: 0.25 },
    { concept: "goldfish", prob: 0.25 },
    { concept: "shark", prob: 0.25 },
    { concept: "snake", prob: 0.25 },
  ],
  [
    { concept: "goldfish", prob: 0.5 },
    { concept: "shark", prob: 0.5 },
  ],
  [{ concept: "goldfish", prob: 0.9230769230769231 }, { concept: "shark", prob: 0.07692307692307693 }],
];

export class MockApi implements ApiClient {
  recorded: unknown[] = [];
  failNext = false;
  conflictNext = false;
  private step = 0;
  private asked: { feature: string; answer: Answer }[] = [];

  private record<T>(payload: T): T {
    this.recorded.push(payload);
    return payload;
  }

  async createSession(): Promise<SessionCreated> {
    this.step = 0;
    this.asked = [];
    return this.record({
      session_id: "mock-session-1",
      state: "asking" as const,
      question: QUESTIONS[0],
      posterior_top: POSTERIORS[0],
      budget: 20,
    });
  }

  async answer(_sessionId: string, answer: Answer): Promise<AnswerResponse> {
    if (this.failNext) {
      this.failNext = false;
      throw new Error("network unreachable");
    }
    if (this.conflictNext) {
      this.conflictNext = false;
      const { HttpError } = await import("../src/api.js");
      throw new HttpError(409, "conflict", "another answer for this session is in flight");
    }
    this.asked.push({ feature: QUESTIONS[this.step].feature, answer });
    this.step += 1;
    const posterior = POSTERIORS[Math.min(this.step, POSTERIORS.length - 1)];
    const base = {
      session_id: "mock-session-1",
      posterior_top: posterior,
      asked: [...this.asked],
      budget: 20 - this.step,
      contradiction: false,
    };
    if (this.step >= 3) {
      return this.record({
        ...base,
        state: "guessed" as const,
        guess: { concept: "goldfish", prob: 0.9230769230769231 },
      });
    }
    return this.record({
      ...base,
      state: "asking" as const,
      question: QUESTIONS[this.step],
    });
  }

  async teach(_sessionId: string, _concept: string, _facts: TeachFact[]): Promise<TeachResponse> {
    return this.record({ ok: true, matrix_version: 1, state: "done" as const });
  }

  async wsd(_text: string): Promise<WsdResponse> {
    return this.record({
      tokens: ["ball", "bounced", "kick", "goal"],
      mentions: [
        {
          span: [0, 1] as [number, number],
          surface: "ball",
          candidates: ["ball_dance", "ball_toy"],
          chosen: "ball_toy",
          synset: "S_ball_plaything",
          flags: [],
        },
        {
          span: [2, 3] as [number, number],
          surface: "kick",
          candidates: ["kick"],
          chosen: "kick",
          synset: null,
          flags: ["tie"],
        },
      ],
      graph: {
        nodes: [
          { id: "ball_toy", activation: 0.8731 },
          { id: "kick", activation: 0.5112 },
          { id: "goal", activation: 0.4201 },
        ],
        edges: [
          { source: "kick", target: "ball_toy", relation_type: "acts_on", weight: 0.9 },
          { source: "goal", target: "ball_toy", relation_type: "scored_with", weight: 0.9 },
        ],
      },
      activation_top: [
        { concept: "ball_toy", value: 0.8731 },
        { concept: "kick", value: 0.5112 },
        { concept: "goal", value: 0.4201 },
      ],
      score: 1.8044,
      converged: true,
    });
  }
}
