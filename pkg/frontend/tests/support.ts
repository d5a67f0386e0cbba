// Shared helpers for driving the app's DOM and seeding backend fixtures.

import { ApiClient } from "../src/api.js";
import type { Gender, NewProfile } from "../src/types.js";

export const BASE = "http://127.0.0.1:8976";

// Each test file works in its own geographic pocket (> 500 m apart) so its
// recommendation pools never see another file's profiles.
export const REGIONS = {
  flow: { latitudeDeg: -25.2637, longitudeDeg: -57.5759 },
  api: { latitudeDeg: -25.42, longitudeDeg: -57.58 },
  poll: { latitudeDeg: -25.32, longitudeDeg: -57.58 },
  stale: { latitudeDeg: -25.37, longitudeDeg: -57.58 },
} as const;

export function nearby(
  region: keyof typeof REGIONS,
  northM: number,
  eastM: number,
): { latitudeDeg: number; longitudeDeg: number } {
  const base = REGIONS[region];
  const lat = base.latitudeDeg + northM / 111_194.9266;
  const lon =
    base.longitudeDeg +
    eastM / (111_194.9266 * Math.cos((base.latitudeDeg * Math.PI) / 180));
  return { latitudeDeg: lat, longitudeDeg: lon };
}

export async function seedProfile(
  userId: string,
  profile: Omit<NewProfile, "id">,
): Promise<ApiClient> {
  const client = new ApiClient(BASE);
  await client.login(userId, `${userId}-pw`);
  await client.createProfile({ id: userId, ...profile });
  return client;
}

export function tutorProfile(
  region: keyof typeof REGIONS,
  index: number,
  gender: Gender,
  level: number,
  subject = "calculus",
): Omit<NewProfile, "id"> {
  return {
    displayName: `Tutor ${index}`,
    gender,
    location: nearby(region, 25 * index, 10 * index),
    competences: { [subject]: level },
  };
}

/** Poll until fn() is truthy; resolves with its value. */
export async function waitFor<T>(
  fn: () => T | null | undefined | false,
  timeoutMs = 8_000,
): Promise<T> {
  const start = Date.now();
  for (;;) {
    const value = fn();
    if (value) return value as T;
    if (Date.now() - start > timeoutMs) throw new Error("waitFor timed out");
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

export function byTestId(root: ParentNode, id: string): HTMLElement {
  const node = root.querySelector(`[data-testid="${id}"]`);
  if (!node) throw new Error(`missing [data-testid="${id}"]`);
  return node as HTMLElement;
}

export function allByTestId(root: ParentNode, id: string): HTMLElement[] {
  return Array.from(root.querySelectorAll(`[data-testid="${id}"]`)) as HTMLElement[];
}

export function setInput(root: ParentNode, id: string, value: string): void {
  (byTestId(root, id) as HTMLInputElement).value = value;
}

export function click(root: ParentNode, id: string): void {
  (byTestId(root, id) as HTMLButtonElement).click();
}

export function answerQuestionnaire(root: ParentNode, answers: number[]): void {
  answers.forEach((value, index) => {
    const radio = root.querySelector<HTMLInputElement>(
      `input[name="q${index}"][value="${value}"]`,
    );
    if (!radio) throw new Error(`no radio q${index}=${value}`);
    radio.click();
  });
}
