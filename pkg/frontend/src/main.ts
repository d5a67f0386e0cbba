import { createApp } from "./app.js";

// API origin: ?api=http://host:port beats same-origin.
const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? window.location.origin;

const root = document.getElementById("app");
if (!root) throw new Error("#app container missing");
createApp(root, { apiBase });
