#!/usr/bin/env node
import { writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { loadCurves } from "./curves.js";
import { renderFigure } from "./figure.js";

const args = yargs(hideBin(process.argv))
  .option("inputs", {
    type: "string",
    array: true,
    demandOption: true,
    describe: "residual-history CSV files (header iter,relative_residual)",
  })
  .option("labels", {
    type: "string",
    array: true,
    default: [] as string[],
    describe: "legend labels, one per input; unlabeled inputs use the file stem",
  })
  .option("out", {
    type: "string",
    demandOption: true,
    describe: "output SVG path",
  })
  .strict()
  .parseSync();

const curves = loadCurves(args.inputs, args.labels, (m) => console.error(m));
if (curves.length === 0) {
  console.error("no plottable curves among the inputs");
  process.exit(1);
}
writeFileSync(args.out, renderFigure(curves));
console.log(`wrote ${args.out} with ${curves.length} curve(s)`);
