export * from "./csv.js";
export * from "./aggregate.js";
export * from "./svg.js";
export * from "./render.js";
export * from "./command.js";
