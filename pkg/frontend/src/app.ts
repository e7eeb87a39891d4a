import { ApiError, Client } from "./api.js";
import type { BestMove, Evaluation, Role, SessionState, TranscriptEntry } from "./model.js";
import { humanIsOpener, humanToAct } from "./model.js";

export interface AppState {
  positionInput: string;
  advantage: number;
  humanRole: Role;
  // What-if panel. evaluationRaw is the untouched response body the panel
  // was rendered from; evalError carries server 400s shown inline.
  evaluation: Evaluation | null;
  evaluationRaw: string | null;
  bestMove: BestMove | null;
  evalError: string | null;
  // Active session (one per tab). The server state is authoritative; the
  // UI only ever re-renders from the last response.
  sessionId: number | null;
  session: SessionState | null;
  lastReply: TranscriptEntry[];
  toast: string | null;
  busy: boolean;
}

export function initialState(): AppState {
  return {
    positionInput: "12+10l",
    advantage: 0,
    humanRole: "opener",
    evaluation: null,
    evaluationRaw: null,
    bestMove: null,
    evalError: null,
    sessionId: null,
    session: null,
    lastReply: [],
    toast: null,
    busy: false,
  };
}

export class App {
  readonly state: AppState = initialState();

  constructor(
    private readonly client: Client,
    private readonly changed: (state: AppState) => void = () => {},
  ) {}

  private notify(): void {
    this.changed(this.state);
  }

  setPosition(text: string): void {
    this.state.positionInput = text.trim();
  }

  setAdvantage(value: number): void {
    this.state.advantage = value;
    this.notify();
  }

  setRole(role: Role): void {
    this.state.humanRole = role;
    this.notify();
  }

  dismissToast(): void {
    this.state.toast = null;
    this.notify();
  }

  // Evaluation and advice arrive together so the what-if panel fills in one
  // step; any server complaint (bad notation, empty position) lands inline.
  async evaluate(position: string = this.state.positionInput): Promise<void> {
    this.state.busy = true;
    this.state.evalError = null;
    this.notify();
    try {
      const [{ evaluation, raw }, best] = await Promise.all([
        this.client.evaluate(position),
        this.client.bestMove(position),
      ]);
      this.state.evaluation = evaluation;
      this.state.evaluationRaw = raw;
      this.state.bestMove = best;
    } catch (error) {
      this.state.evaluation = null;
      this.state.evaluationRaw = null;
      this.state.bestMove = null;
      this.state.evalError = error instanceof ApiError ? error.message : String(error);
    } finally {
      this.state.busy = false;
      this.notify();
    }
  }

  async startSession(): Promise<void> {
    this.state.busy = true;
    this.state.toast = null;
    this.notify();
    try {
      const created = await this.client.createSession(
        this.state.positionInput,
        this.state.advantage,
        this.state.humanRole,
      );
      this.state.sessionId = created.id;
      this.state.session = created.state;
      this.state.lastReply = [];
      await this.refreshWhatIf();
    } catch (error) {
      this.state.toast = error instanceof ApiError ? error.message : String(error);
    } finally {
      this.state.busy = false;
      this.notify();
    }
  }

  async open(component: string): Promise<void> {
    await this.act({ type: "open", component });
  }

  async keep(): Promise<void> {
    await this.act({ type: "keep" });
  }

  async giveUp(): Promise<void> {
    await this.act({ type: "give_up" });
  }

  private async act(action: { type: "open" | "keep" | "give_up"; component?: string }): Promise<void> {
    if (this.state.sessionId === null || this.state.session === null) return;
    this.state.busy = true;
    this.notify();
    try {
      const result = await this.client.act(this.state.sessionId, action, this.state.session.version);
      this.state.session = result.state;
      this.state.lastReply = result.engine_reply;
      this.state.toast = null;
      await this.refreshWhatIf();
    } catch (error) {
      // 409s are turn or version conflicts: the session itself is fine,
      // the attempted move is not. Shown as a toast, state left alone.
      this.state.toast = error instanceof ApiError ? error.message : String(error);
    } finally {
      this.state.busy = false;
      this.notify();
    }
  }

  // Keep the what-if panel pointed at the position the human is about to
  // open from, so the table always informs the next real decision.
  private async refreshWhatIf(): Promise<void> {
    const session = this.state.session;
    if (session === null || session.terminal) return;
    if (session.pending === null && humanIsOpener(session) && humanToAct(session)) {
      if (this.state.evaluation?.position !== session.remaining) {
        await this.evaluate(session.remaining);
      }
    }
  }
}
