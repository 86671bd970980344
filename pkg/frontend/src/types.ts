// Shapes returned by the reqgrid HTTP service.

export interface RequirementInfo {
  id: string;
  label: string;
  left_pole: string;
  right_pole: string;
  description: string;
}

export interface CatalogResponse {
  scale: { min: number; max: number };
  n_seeds: number;
  k_recommendations: number;
  requirements: RequirementInfo[];
}

export interface PredictionItem {
  requirement: string;
  raw_value: number;
  clamped_value: number;
  neighbor_support: number;
}

export interface RecommendationInfo {
  target: string;
  n: number;
  m: number;
  k: number;
  items: PredictionItem[];
}

export interface FeedbackInfo {
  session_id: string;
  requirement_id: string;
  stars: number;
  education_level: string;
}

export type SessionStateName =
  | "SEEDS_PRESENTED"
  | "SEEDS_RATED"
  | "RECOMMENDED"
  | "FEEDBACK_COLLECTED";

export interface SessionInfo {
  id: string;
  stakeholder: { id: string; education_level: string };
  state: SessionStateName;
  presented_seeds: string[];
  recommendation: RecommendationInfo | null;
  feedback: FeedbackInfo[];
  created_at: number;
  updated_at: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

export const EDUCATION_LEVELS = ["PhD", "Master", "Bachelor", "Unspecified"] as const;
