import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";

import { assembleDataset, type Dataset } from "../dist/data.js";

const FIXTURE_DIR = join(__dirname, "..", "fixtures");

export function loadFixtureDataset(): Dataset {
  const panel = JSON.parse(readFileSync(join(FIXTURE_DIR, "panel.json"), "utf-8"));
  const documents = readdirSync(FIXTURE_DIR)
    .filter((name) => name.startsWith("network_"))
    .map((name) => JSON.parse(readFileSync(join(FIXTURE_DIR, name), "utf-8")));
  return assembleDataset(panel, documents);
}
