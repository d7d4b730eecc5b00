// Entry point: hash routing between the explorer grid and the prober.

import { renderExplorer } from "./explorer.js";
import { renderProber } from "./prober.js";

function route(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const hash = window.location.hash || "#/explorer";
  const view = hash.split("?")[0];
  const tabs = document.querySelectorAll<HTMLAnchorElement>("nav a");
  tabs.forEach((tab) => {
    tab.classList.toggle("active", tab.getAttribute("href") === view);
  });
  if (view === "#/probe") {
    void renderProber(root);
  } else {
    void renderExplorer(root);
  }
}

window.addEventListener("hashchange", route);
window.addEventListener("DOMContentLoaded", route);
