#!/usr/bin/env node
import { main } from "./command.js";

process.exit(main(process.argv.slice(2)));
