// Recorded responses from the live explorer API (captured once with the
// Python service; regenerate by POSTing the packaged fixtures again).

import { readFileSync } from "node:fs";

import type { ResultDocument, ScenarioDocument, WhatIfResponse } from "../src/types.js";

function load<T>(name: string): T {
  const url = new URL(`./fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export const evaluateCase1a = load<ResultDocument>("evaluate_case1a");
export const evaluateCase1b = load<ResultDocument>("evaluate_case1b");
export const evaluateCase1c = load<ResultDocument>("evaluate_case1c");
export const whatIfCase1bAgent1 = load<WhatIfResponse>("whatif_case1b_agent1");
export const scenarioCase1b = load<ScenarioDocument>("scenario_case1b");
