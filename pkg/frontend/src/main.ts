import { HeatsApi } from "./api.js";
import { initApp } from "./app.js";

declare global {
  interface Window {
    HEATS_API_BASE?: string;
  }
}

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
initApp(root, new HeatsApi(window.HEATS_API_BASE ?? ""));
