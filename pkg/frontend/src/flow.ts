import type { ApiClient } from "./api";
import type { CatalogResponse, RequirementInfo, SessionInfo } from "./types";

export type Screen = "identity" | "grid" | "recommendations" | "feedback" | "done";

/**
 * Drives the four-screen elicitation flow. Holds all client-side state and
 * validates input before it goes over the wire, mirroring the service's own
 * checks so most mistakes are caught without a round trip.
 */
export class FlowController {
  screen: Screen = "identity";
  catalog: CatalogResponse | null = null;
  session: SessionInfo | null = null;
  gridScores: Map<string, number> = new Map();
  stars: Map<string, number> = new Map();
  lastError: string | null = null;

  constructor(private client: ApiClient) {}

  async loadCatalog(): Promise<CatalogResponse> {
    this.catalog = await this.client.getCatalog();
    return this.catalog;
  }

  requirement(id: string): RequirementInfo {
    const req = this.catalog?.requirements.find((r) => r.id === id);
    if (!req) throw new Error(`requirement ${id} not in catalog`);
    return req;
  }

  /** Seed requirements to rate, in the order the service presented them. */
  get seeds(): RequirementInfo[] {
    if (!this.session) return [];
    return this.session.presented_seeds.map((id) => this.requirement(id));
  }

  /** Recommended requirement ids, strictly in service ranking order. */
  get recommendedIds(): string[] {
    return this.session?.recommendation?.items.map((p) => p.requirement) ?? [];
  }

  async startSession(stakeholderId: string, educationLevel: string): Promise<void> {
    const id = stakeholderId.trim();
    if (!id) throw new Error("stakeholder id must not be empty");
    if (!this.catalog) await this.loadCatalog();
    this.session = await this.client.createSession(id, educationLevel);
    this.gridScores.clear();
    this.stars.clear();
    this.screen = "grid";
  }

  setGridScore(requirementId: string, score: number): void {
    const { min, max } = this.catalog!.scale;
    if (!Number.isInteger(score) || score < min || score > max) {
      throw new Error(`score must be an integer in [${min}, ${max}]`);
    }
    if (!this.session!.presented_seeds.includes(requirementId)) {
      throw new Error(`${requirementId} is not one of the presented seeds`);
    }
    this.gridScores.set(requirementId, score);
  }

  get gridComplete(): boolean {
    const seeds = this.session?.presented_seeds ?? [];
    return seeds.length > 0 && seeds.every((id) => this.gridScores.has(id));
  }

  async submitGrid(): Promise<void> {
    if (!this.gridComplete) throw new Error("rate every seed before submitting");
    const ratings = this.session!.presented_seeds.map((id) => ({
      requirement_id: id,
      score: this.gridScores.get(id)!,
    }));
    this.session = await this.client.submitRatings(this.session!.id, ratings);
    this.session = await this.client.requestRecommendations(this.session!.id);
    this.screen = "recommendations";
  }

  proceedToFeedback(): void {
    if (this.screen !== "recommendations") throw new Error("no recommendations yet");
    this.screen = "feedback";
  }

  setStars(requirementId: string, stars: number): void {
    if (!Number.isInteger(stars) || stars < 0 || stars > 5) {
      throw new Error("stars must be an integer in [0, 5]");
    }
    if (!this.recommendedIds.includes(requirementId)) {
      throw new Error(`${requirementId} was not recommended`);
    }
    this.stars.set(requirementId, stars);
  }

  async submitStars(): Promise<void> {
    const feedback = this.recommendedIds
      .filter((id) => this.stars.has(id))
      .map((id) => ({ requirement_id: id, stars: this.stars.get(id)! }));
    if (feedback.length === 0) throw new Error("rate at least one recommendation");
    this.session = await this.client.submitFeedback(this.session!.id, feedback);
    this.screen = "done";
  }
}
