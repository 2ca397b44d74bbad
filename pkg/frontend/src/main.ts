import { HttpApi } from "./api.js";
import { createExplorer } from "./app.js";

const root = document.getElementById("app");
if (!(root instanceof HTMLElement)) throw new Error("missing #app container");

// same-origin deployment: the service hosts these assets via --static-dir
createExplorer(root, new HttpApi(""));
