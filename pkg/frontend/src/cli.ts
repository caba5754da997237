#!/usr/bin/env node
import { dirname, resolve } from "node:path";

import { loadFigureSpec, render } from "./figures.js";

const args = process.argv.slice(2);
if (args.length === 0) {
  console.error("usage: dronecell-figures <figure-spec.json> [...more specs]");
  process.exit(2);
}

let failed = false;
for (const specPath of args) {
  try {
    const spec = loadFigureSpec(specPath);
    render(spec, dirname(resolve(specPath)));
    console.log(`${spec.figure}: wrote ${spec.output}`);
  } catch (err) {
    console.error(`${specPath}: ${err instanceof Error ? err.message : err}`);
    failed = true;
  }
}
process.exit(failed ? 1 : 0);
