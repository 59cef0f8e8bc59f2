// Payload shapes of the /v1 API this client consumes. The client never
// computes numbers of its own: everything rendered comes from these bodies.

export type Answer = "yes" | "no" | "unknown";

export interface PosteriorEntry {
  concept: string;
  prob: number;
}

export interface Question {
  feature: string;
  text: string;
}

export interface Guess {
  concept: string;
  prob: number;
}

export interface SessionCreated {
  session_id: string;
  state: "asking";
  question: Question;
  posterior_top: PosteriorEntry[];
  budget: number;
}

export interface AnswerResponse {
  session_id: string;
  state: "asking" | "guessed";
  question?: Question;
  guess?: Guess;
  posterior_top: PosteriorEntry[];
  asked: { feature: string; answer: Answer }[];
  budget: number;
  contradiction: boolean;
}

export interface TeachResponse {
  ok: boolean;
  matrix_version: number;
  state: "done";
}

export interface Mention {
  span: [number, number];
  surface: string;
  candidates: string[];
  chosen: string;
  synset: string | null;
  flags: string[];
}

export interface GraphNode {
  id: string;
  activation: number;
}

export interface GraphEdge {
  source: string;
  target: string;
  relation_type: string;
  weight: number;
}

export interface WsdResponse {
  tokens: string[];
  mentions: Mention[];
  graph: { nodes: GraphNode[]; edges: GraphEdge[] };
  activation_top: { concept: string; value: number }[];
  score: number;
  converged: boolean;
}

export interface ApiError {
  code: string;
  message: string;
}

export interface TeachFact {
  feature: string;
  value: number;
}
