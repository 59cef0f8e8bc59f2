import type { ApiClient } from "./api.js";
import { describeError } from "./session.js";
import type { WsdResponse } from "./types.js";

export interface ExploreState {
  text: string;
  result: WsdResponse | null;
  inFlight: boolean;
  banner: string | null;
}

export class ExploreStore {
  state: ExploreState = { text: "", result: null, inFlight: false, banner: null };

  constructor(
    private api: ApiClient,
    private onChange: (state: ExploreState) => void = () => {},
  ) {}

  private emit() {
    this.onChange(this.state);
  }

  setText(text: string) {
    this.state = { ...this.state, text };
    this.emit();
  }

  async submit(): Promise<void> {
    const text = this.state.text.trim();
    if (!text || this.state.inFlight) return;
    this.state = { ...this.state, inFlight: true };
    this.emit();
    try {
      const result = await this.api.wsd(text);
      this.state = { ...this.state, result, inFlight: false, banner: null };
    } catch (error) {
      this.state = {
        ...this.state,
        inFlight: false,
        banner: describeError(error, "analysis failed"),
      };
    }
    this.emit();
  }
}
