import type { NetworkDocument, PanelDocument } from "./types.js";

const SCHEMA_VERSION = 1;

export class SchemaError extends Error {}

export function validateNetworkDocument(doc: unknown): NetworkDocument {
  const d = doc as NetworkDocument;
  if (!d || d.schema_version !== SCHEMA_VERSION) {
    throw new SchemaError(`unsupported network document schema: ${d?.schema_version}`);
  }
  if (!Array.isArray(d.nodes) || !Array.isArray(d.links) || typeof d.period !== "string") {
    throw new SchemaError("network document missing nodes/links/period");
  }
  const n = d.nodes.length;
  d.nodes.forEach((node, i) => {
    if (node.id !== i) throw new SchemaError(`node ${i} has id ${node.id}; expected positional ids`);
  });
  for (const link of d.links) {
    if (
      !Number.isInteger(link.source) || !Number.isInteger(link.target) ||
      link.source < 0 || link.source >= n || link.target < 0 || link.target >= n
    ) {
      throw new SchemaError(`link index out of range: ${link.source}-${link.target}`);
    }
    if (!(link.weight > 0)) throw new SchemaError("links must carry positive weights");
  }
  return d;
}

export function validatePanelDocument(doc: unknown): PanelDocument {
  const d = doc as PanelDocument;
  if (!d || d.schema_version !== SCHEMA_VERSION) {
    throw new SchemaError(`unsupported panel schema: ${d?.schema_version}`);
  }
  if (!Array.isArray(d.periods) || !Array.isArray(d.nodes) || !Array.isArray(d.smoothed)) {
    throw new SchemaError("panel document missing periods/nodes/smoothed");
  }
  if (d.smoothed.length !== d.periods.length) {
    throw new SchemaError("panel smoothed matrix does not match period count");
  }
  for (const row of d.smoothed) {
    if (row.length !== d.nodes.length) {
      throw new SchemaError("panel smoothed row does not match node count");
    }
  }
  return d;
}

export interface Dataset {
  panel: PanelDocument;
  documents: NetworkDocument[]; // one per period, in panel order
}

export function assembleDataset(panel: unknown, documents: unknown[]): Dataset {
  const validPanel = validatePanelDocument(panel);
  const validDocs = documents.map(validateNetworkDocument);
  const byPeriod = new Map(validDocs.map((d) => [d.period, d]));
  const ordered: NetworkDocument[] = [];
  for (const period of validPanel.periods) {
    const doc = byPeriod.get(period);
    if (!doc) throw new SchemaError(`missing network document for period ${period}`);
    for (const [i, label] of validPanel.nodes.entries()) {
      if (doc.nodes[i]?.label !== label) {
        throw new SchemaError(`node universe mismatch in period ${period}`);
      }
    }
    ordered.push(doc);
  }
  return { panel: validPanel, documents: ordered };
}

export async function fetchDataset(baseUrl: string): Promise<Dataset> {
  const panel = await fetchJson(`${baseUrl}panel.json`);
  const periods: string[] = (panel as PanelDocument).periods ?? [];
  const documents = await Promise.all(
    periods.map((p) => fetchJson(`${baseUrl}network_${p}.json`))
  );
  return assembleDataset(panel, documents);
}

async function fetchJson(url: string): Promise<unknown> {
  const response = await fetch(url);
  if (!response.ok) throw new SchemaError(`failed to load ${url}: ${response.status}`);
  return response.json();
}

/** Centrality values for one period under the selected variant.
 *  Raw values can be null (singular unsmoothed matrix); those fall back to
 *  the smoothed value so every node keeps a radius. */
export function centralities(
  dataset: Dataset,
  periodIndex: number,
  variant: "smoothed" | "raw"
): number[] {
  const doc = dataset.documents[periodIndex];
  return doc.nodes.map((node) =>
    variant === "raw" && node.info_centrality !== null
      ? node.info_centrality
      : node.info_centrality_smoothed
  );
}
