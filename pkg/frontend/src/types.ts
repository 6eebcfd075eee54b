/** Wire formats shared with the planner service. */

export type VertexId = string | number;

export interface TurbineJson {
  id: VertexId;
  x: number;
  y: number;
}

export interface SubstationJson {
  id: VertexId;
  x: number;
  y: number;
  capacity: number;
}

export interface EdgeJson {
  u: VertexId;
  v: VertexId;
  length?: number;
}

export interface CableJson {
  capacity: number;
  cost_per_length: number;
}

export interface FarmJson {
  turbines: TurbineJson[];
  substations: SubstationJson[];
  edges: EdgeJson[];
  cables: CableJson[];
}

export interface EdgeFlowJson {
  u: VertexId;
  v: VertexId;
  flow: number;
}

export interface CableAssignmentJson {
  u: VertexId;
  v: VertexId;
  cable_index: number | null;
}

export interface SolveResponse {
  edge_flows: EdgeFlowJson[];
  cable_assignment: CableAssignmentJson[];
  total_cost: number;
  trace_summary?: {
    iterations: number;
    cancellations: number;
    exhausted: boolean;
    seed: number;
  };
  wall_time_ms?: number;
}

export interface SolveRequest {
  farm: FarmJson;
  init?: string;
  delta?: string;
  seed?: number;
  time_limit_ms?: number;
}

export const INIT_STRATEGIES = [
  "bfs-any",
  "bfs-last",
  "dijkstra-any",
  "dijkstra-last",
  "collecting-bfs-any",
  "collecting-bfs-last",
  "collecting-dijkstra-any",
  "collecting-dijkstra-last",
] as const;

export const DELTA_STRATEGIES = [
  "inc",
  "dec",
  "inc-dec",
  "random",
  "stay-inc",
  "stay-dec",
  "stay-inc-dec",
  "stay-random",
] as const;

export type InitStrategy = (typeof INIT_STRATEGIES)[number];
export type DeltaStrategy = (typeof DELTA_STRATEGIES)[number];

export interface StrategyPair {
  init: InitStrategy;
  delta: DeltaStrategy;
}
