/** Wire types mirroring the dispatch service's JSON documents. */

export interface Classification {
  category: string;
  type_id: number | null;
  confidence: number;
}

export interface EvidenceRow {
  formula: string;
  kind: string;
  value: unknown;
  provenance: number[];
  basis: number;
  detail: string | null;
}

export interface KnowledgeRow {
  chunk_id: number;
  relatedness: number;
  text: string;
}

export interface TurnDoc {
  index: number;
  query: string;
  classification: Classification;
  formulas: string | null;
  evidence: EvidenceRow[];
  knowledge: KnowledgeRow[];
  explanation: string;
  error: string | null;
  rating: number | null;
}

export interface TranscriptDoc {
  schema: string;
  id: string;
  decision: string;
  turns: TurnDoc[];
}

export interface StopDoc {
  kind: string;
  request_id: number;
  location: [number, number];
  eta: number;
}

export interface VehicleDoc {
  id: number;
  capacity: number;
  occupancy: number;
  location: [number, number];
  operable: boolean;
  route: StopDoc[];
}

export interface RequestDoc {
  id: number;
  origin: [number, number];
  destination: [number, number];
  t_p: number;
  t_d: number;
  passengers: number;
  status: string;
  t_ap: number | null;
  t_ad: number | null;
}

export interface WorldDoc {
  time: number;
  congestion_factor: number;
  vehicles: VehicleDoc[];
  requests: RequestDoc[];
  assignments: Record<string, number>;
}

export interface ScenarioDoc {
  schema: string;
  travel: { width: number; height: number; speed: number; congestion_factor: number };
  world: WorldDoc;
}

export interface Suggestion {
  type_id: number;
  category: string;
  text: string;
}

export interface ActionDoc {
  kind: string;
  vehicle_id?: number;
  pickup_pos?: number;
  dropoff_pos?: number;
  request_id?: number;
}

export interface PlanResponse {
  decision: ActionDoc;
  tree_id: string;
  violation: string | null;
}
