// Shapes of the exporter's JSON documents (schema_version 1).

export interface NodeRecord {
  id: number;
  label: string;
  strength: number;
  info_centrality: number | null;
  info_centrality_smoothed: number;
  is_gsib: boolean;
}

export interface LinkRecord {
  source: number;
  target: number;
  weight: number;
}

export interface NetworkDocument {
  schema_version: number;
  period: string;
  alpha: number;
  nodes: NodeRecord[];
  links: LinkRecord[];
}

export interface PanelDocument {
  schema_version: number;
  alpha: number;
  periods: string[];
  nodes: string[];
  smoothed: number[][];
  smoothed_normalized: number[][];
  raw: (number | null)[][] | null;
  degenerate: boolean;
}

export type CentralityVariant = "smoothed" | "raw";
