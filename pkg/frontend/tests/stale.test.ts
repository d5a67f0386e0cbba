// Server authority on stale actions: accepting a cancelled request keeps
// the inbox intact and shows a dismissible alert from the 409.

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { createApp, type AppHandle } from "../src/app.js";
import {
  BASE,
  allByTestId,
  byTestId,
  click,
  nearby,
  seedProfile,
  setInput,
  tutorProfile,
  waitFor,
} from "./support.js";

let requester: ApiClient;
let app: AppHandle;

beforeAll(async () => {
  requester = await seedProfile("stale-req", {
    displayName: "Changer",
    gender: "male",
    location: nearby("stale", 0, 0),
    competences: { calculus: 0.1 },
  });
  await seedProfile("stale-t1", tutorProfile("stale", 1, "female", 0.9));
});

afterAll(() => app?.stop());

describe("stale inbox actions", () => {
  it("accepting a cancelled request alerts without destroying the card", async () => {
    const created = await requester.createTask("calculus", "indifferent", "soon gone");

    const root = document.createElement("div");
    document.body.appendChild(root);
    app = createApp(root, { apiBase: BASE, pollIntervalMs: 0 });
    setInput(root, "login-user", "stale-t1");
    setInput(root, "login-secret", "stale-t1-pw");
    click(root, "login-submit");
    await waitFor(() => root.querySelector('[data-testid="whoami"]'));
    await app.refresh();
    const note = await waitFor(() => {
      const cards = allByTestId(root, "inbox-note");
      return cards.find((c) => c.textContent?.includes(created.id));
    });

    // cancelled behind the tutor's back
    await requester.postTransaction(created.id, "cancel");

    (note.querySelector('[data-testid="note-accept"]') as HTMLButtonElement).click();
    await waitFor(() => allByTestId(root, "inbox-note").length > 0
      && root.querySelector(".alert"));
    const alert = root.querySelector(".alert") as HTMLElement;
    expect(alert.textContent).toContain("cancelled");
    expect(allByTestId(root, "inbox-note").some(
      (c) => c.textContent?.includes(created.id))).toBe(true);
    expect(note.textContent).not.toContain("volunteer recorded");

    (alert.querySelector(".alert-dismiss") as HTMLButtonElement).click();
    expect(root.querySelector(".alert")).toBeNull();
  });
});
