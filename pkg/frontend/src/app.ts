// Browser client for the tutoring flow: login, registration, trait
// questionnaire, request creation, volunteer inbox, and best-tutor
// selection. The UI keeps no matching or lifecycle logic of its own —
// every displayed state comes from a server response, and task panels are
// re-fetched before rendering so the screen never runs ahead of the
// server. While an action is in flight its button is disabled, so a poll
// and a click cannot double-submit.

import { ApiClient, ApiError } from "./api.js";
import type {
  Gender,
  InboxNotification,
  Preference,
  Profile,
  Task,
  Traits,
} from "./types.js";

export interface AppConfig {
  apiBase: string;
  /** Refresh period for inbox/task polling; 0 disables the timer. */
  pollIntervalMs?: number;
}

export interface AppHandle {
  client: ApiClient;
  refresh(): Promise<void>;
  stop(): void;
}

const QUESTIONNAIRE_ITEMS = [
  "I am outgoing and sociable.",
  "I tend to be quiet around new people.",
  "I am considerate and kind to almost everyone.",
  "I can be cold and distant.",
  "I make plans and follow through with them.",
  "I often leave things disorganized.",
  "I stay calm under pressure.",
  "I get nervous easily.",
  "I enjoy exploring new ideas.",
  "I prefer familiar routines over new experiences.",
] as const;

const TRAIT_LABELS: Record<keyof Traits, string> = {
  extraversion: "Extraversion",
  agreeableness: "Agreeableness",
  conscientiousness: "Conscientiousness",
  emotionalStability: "Emotional stability",
  openness: "Openness",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  for (const child of children) node.append(child);
  return node;
}

function testid(root: ParentNode, id: string): HTMLElement {
  const node = root.querySelector(`[data-testid="${id}"]`);
  if (!node) throw new Error(`missing element ${id}`);
  return node as HTMLElement;
}

/** Disable a button for the duration of one async action. */
async function withBusy(button: HTMLButtonElement, action: () => Promise<void>): Promise<void> {
  if (button.disabled) return;
  button.disabled = true;
  try {
    await action();
  } finally {
    button.disabled = false;
  }
}

export function createApp(root: HTMLElement, config: AppConfig): AppHandle {
  const client = new ApiClient(config.apiBase);
  let userId: string | null = null;
  let profile: Profile | null = null;
  let activeTaskId: string | null = null;
  let timer: ReturnType<typeof setInterval> | null = null;

  root.classList.add("tutormatch");

  // --- shared chrome ------------------------------------------------------

  function alertMessage(text: string): void {
    const area = testid(root, "alert-area");
    const note = el("div", { class: "alert", role: "alert" }, [
      text,
      el("button", { type: "button", class: "alert-dismiss" }, ["dismiss"]),
    ]);
    note.querySelector("button")!.addEventListener("click", () => note.remove());
    area.append(note);
  }

  function describe(err: unknown): string {
    if (err instanceof ApiError) {
      if (err.violations.length) return err.violations.join("; ");
      const detail = (err.body as { detail?: unknown } | null)?.detail;
      return typeof detail === "string" ? detail : `request failed (${err.status})`;
    }
    return String(err);
  }

  // --- login --------------------------------------------------------------

  function renderLogin(): void {
    root.replaceChildren(
      el("form", { class: "login" }, [
        el("h1", {}, ["Peer tutoring"]),
        el("label", {}, ["User id ", el("input", { "data-testid": "login-user" })]),
        el("label", {}, [
          "Secret ",
          el("input", { type: "password", "data-testid": "login-secret" }),
        ]),
        el("button", { type: "button", "data-testid": "login-submit" }, ["Log in"]),
        el("div", { class: "error", "data-testid": "login-error" }),
      ]),
    );
    const submit = testid(root, "login-submit") as HTMLButtonElement;
    submit.addEventListener("click", () =>
      withBusy(submit, async () => {
        const id = (testid(root, "login-user") as HTMLInputElement).value.trim();
        const secret = (testid(root, "login-secret") as HTMLInputElement).value;
        try {
          await client.login(id, secret);
        } catch (err) {
          testid(root, "login-error").textContent = describe(err);
          return;
        }
        userId = id;
        try {
          profile = await client.getProfile(id);
        } catch (err) {
          if (err instanceof ApiError && err.status === 404) {
            profile = null;
            renderRegistration();
            return;
          }
          throw err;
        }
        renderMain();
        await refresh();
      }),
    );
  }

  // --- registration ---------------------------------------------------------

  function renderRegistration(): void {
    const competences: Record<string, number> = {};
    root.replaceChildren(
      el("form", { class: "register" }, [
        el("h1", {}, [`Welcome, ${userId}`]),
        el("p", {}, ["Create your profile to join the tutoring network."]),
        el("label", {}, ["Name ", el("input", { "data-testid": "reg-name" })]),
        el("label", {}, [
          "Gender ",
          el("select", { "data-testid": "reg-gender" }, [
            el("option", { value: "female" }, ["female"]),
            el("option", { value: "male" }, ["male"]),
            el("option", { value: "nonbinary" }, ["nonbinary"]),
            el("option", { value: "undisclosed" }, ["undisclosed"]),
          ]),
        ]),
        el("label", {}, ["Latitude ", el("input", { "data-testid": "reg-lat" })]),
        el("label", {}, ["Longitude ", el("input", { "data-testid": "reg-lon" })]),
        el("fieldset", {}, [
          el("legend", {}, ["Subjects I can help with (level 0..1)"]),
          el("label", {}, ["Subject ", el("input", { "data-testid": "reg-subject" })]),
          el("label", {}, ["Level ", el("input", { "data-testid": "reg-level" })]),
          el("button", { type: "button", "data-testid": "reg-add" }, ["Add subject"]),
          el("ul", { "data-testid": "reg-competences" }),
        ]),
        el("button", { type: "button", "data-testid": "reg-submit" }, ["Create profile"]),
        el("div", { class: "error", "data-testid": "reg-violations" }),
      ]),
    );
    testid(root, "reg-add").addEventListener("click", () => {
      const subject = (testid(root, "reg-subject") as HTMLInputElement).value.trim();
      const level = Number((testid(root, "reg-level") as HTMLInputElement).value);
      if (!subject || Number.isNaN(level)) return;
      competences[subject] = level;
      testid(root, "reg-competences").append(el("li", {}, [`${subject}: ${level}`]));
    });
    const submit = testid(root, "reg-submit") as HTMLButtonElement;
    submit.addEventListener("click", () =>
      withBusy(submit, async () => {
        try {
          profile = await client.createProfile({
            id: userId!,
            displayName: (testid(root, "reg-name") as HTMLInputElement).value.trim(),
            gender: (testid(root, "reg-gender") as HTMLSelectElement).value as Gender,
            location: {
              latitudeDeg: Number((testid(root, "reg-lat") as HTMLInputElement).value),
              longitudeDeg: Number((testid(root, "reg-lon") as HTMLInputElement).value),
            },
            competences,
          });
        } catch (err) {
          testid(root, "reg-violations").textContent = describe(err);
          return;
        }
        renderMain();
        await refresh();
      }),
    );
  }

  // --- main layout -----------------------------------------------------------

  function renderMain(): void {
    root.replaceChildren(
      el("header", {}, [
        el("strong", { "data-testid": "whoami" }, [profile?.displayName ?? userId ?? ""]),
        el("span", {}, [
          "unread: ",
          el("span", { "data-testid": "unread-count" }, ["0"]),
        ]),
        el("button", { type: "button", "data-testid": "logout" }, ["Log out"]),
      ]),
      el("div", { class: "alerts", "data-testid": "alert-area" }),
      el("section", { class: "profile" }, [
        el("h2", {}, ["My personality profile"]),
        el("div", { "data-testid": "trait-bars" }),
        buildQuestionnaire(),
      ]),
      el("section", { class: "request" }, [
        el("h2", {}, ["Ask for tutoring"]),
        el("form", { class: "request-form" }, [
          el("label", {}, ["Subject ", el("input", { "data-testid": "request-subject" })]),
          el("label", {}, [
            "Tutor personality ",
            el("select", { "data-testid": "request-preference" }, [
              el("option", { value: "similar" }, ["similar to mine"]),
              el("option", { value: "different" }, ["different from mine"]),
              el("option", { value: "indifferent" }, ["no preference"]),
            ]),
          ]),
          el("label", {}, [
            "Details ",
            el("textarea", { "data-testid": "request-description" }),
          ]),
          el("button", { type: "button", "data-testid": "request-create" }, [
            "Find tutors",
          ]),
        ]),
        el("div", { "data-testid": "request-status" }),
        el("div", { "data-testid": "task-panel" }),
      ]),
      el("section", { class: "inbox" }, [
        el("h2", {}, ["Inbox"]),
        el("div", { "data-testid": "inbox-list" }),
      ]),
    );
    renderTraits(profile?.traits ?? null);
    testid(root, "logout").addEventListener("click", () => {
      client.logout();
      userId = null;
      profile = null;
      activeTaskId = null;
      renderLogin();
    });
    const create = testid(root, "request-create") as HTMLButtonElement;
    create.addEventListener("click", () =>
      withBusy(create, async () => {
        const subject = (testid(root, "request-subject") as HTMLInputElement).value.trim();
        const preference = (testid(root, "request-preference") as HTMLSelectElement)
          .value as Preference;
        const description = (
          testid(root, "request-description") as HTMLTextAreaElement
        ).value;
        try {
          const created = await client.createTask(subject, preference, description);
          activeTaskId = created.id;
          testid(root, "request-status").textContent =
            `${created.notifiedTutorIds.length} tutors notified`;
        } catch (err) {
          alertMessage(describe(err));
          return;
        }
        await refreshTask();
      }),
    );
  }

  // --- questionnaire -----------------------------------------------------------

  function buildQuestionnaire(): HTMLElement {
    const form = el("form", { class: "questionnaire", "data-testid": "questionnaire" });
    form.append(
      el("p", {}, ["How well does each statement describe you? (1 = disagree, 5 = agree)"]),
    );
    QUESTIONNAIRE_ITEMS.forEach((text, index) => {
      const row = el("div", { class: "item", "data-testid": `q-item-${index}` }, [text, " "]);
      for (let value = 1; value <= 5; value += 1) {
        row.append(
          el("label", { class: "likert" }, [
            el("input", { type: "radio", name: `q${index}`, value: String(value) }),
            String(value),
          ]),
        );
      }
      form.append(row);
    });
    const submit = el(
      "button",
      { type: "button", "data-testid": "q-submit", disabled: "" },
      ["Save personality profile"],
    );
    form.append(submit, el("div", { class: "error", "data-testid": "q-violations" }));

    const answers = (): number[] =>
      QUESTIONNAIRE_ITEMS.map((_item, index) => {
        const checked = form.querySelector<HTMLInputElement>(`input[name="q${index}"]:checked`);
        return checked ? Number(checked.value) : 0;
      });
    form.addEventListener("change", () => {
      // an unanswered item blocks submission
      submit.disabled = answers().some((a) => a === 0);
    });
    submit.addEventListener("click", () =>
      withBusy(submit, async () => {
        try {
          const { traits } = await client.submitQuestionnaire(userId!, answers());
          renderTraits(traits);
          testid(root, "q-violations").textContent = "";
        } catch (err) {
          testid(root, "q-violations").textContent = describe(err);
        }
      }),
    );
    return form;
  }

  function renderTraits(traits: Traits | null): void {
    const bars = testid(root, "trait-bars");
    if (!traits) {
      bars.replaceChildren(el("p", {}, ["No questionnaire answers yet."]));
      return;
    }
    bars.replaceChildren(
      ...(Object.keys(TRAIT_LABELS) as (keyof Traits)[]).map((name) => {
        const percent = Math.round(traits[name] * 100);
        return el("div", { class: "trait" }, [
          el("span", { class: "trait-name" }, [TRAIT_LABELS[name]]),
          el("div", { class: "trait-track" }, [
            el("div", {
              class: "trait-bar",
              "data-testid": `trait-bar-${name}`,
              style: `width: ${percent}%`,
              "data-percent": String(percent),
            }),
          ]),
          el("span", { class: "trait-value" }, [`${percent}%`]),
        ]);
      }),
    );
  }

  // --- active task panel ----------------------------------------------------------

  async function refreshTask(): Promise<void> {
    if (!activeTaskId) return;
    let task: Task;
    try {
      task = await client.getTask(activeTaskId); // render only what the server says
    } catch (err) {
      alertMessage(describe(err));
      return;
    }
    renderTask(task);
  }

  function renderTask(task: Task): void {
    const panel = testid(root, "task-panel");
    panel.replaceChildren(
      el("h3", {}, [`Request ${task.id}: ${task.subject}`]),
      el("p", {}, [
        "state: ",
        el("strong", { "data-testid": "task-state" }, [task.state]),
      ]),
    );
    if (task.state === "completed" && task.selectedTutorId) {
      panel.append(
        el("p", { "data-testid": "task-outcome" }, [
          `You picked ${task.selectedTutorId}. Good luck!`,
        ]),
      );
      return;
    }
    if (task.state === "cancelled" || task.state === "expired") return;

    const volunteers = task.recommended.filter(
      (entry) => task.responses[entry.candidateId] === "volunteered",
    );
    const list = el("div", { class: "volunteers", "data-testid": "volunteer-list" });
    if (!volunteers.length) {
      list.append(el("p", {}, ["Waiting for tutors to respond…"]));
    }
    for (const entry of volunteers) {
      const select = el(
        "button",
        { type: "button", "data-testid": `volunteer-select-${entry.candidateId}` },
        ["Choose this tutor"],
      ) as HTMLButtonElement;
      select.addEventListener("click", () =>
        withBusy(select, async () => {
          try {
            await client.postTransaction(task.id, "bestResponse", {
              chosenTutorId: entry.candidateId,
            });
          } catch (err) {
            if (err instanceof ApiError && err.status === 409) {
              alertMessage("The request changed in the meantime; refreshing.");
            } else {
              alertMessage(describe(err));
            }
          }
          await refreshTask(); // server verdict either way
        }),
      );
      list.append(
        el("div", { class: "volunteer-card", "data-testid": "volunteer-card" }, [
          el("strong", {}, [entry.candidateId]),
          el(
            "span",
            {
              class: `badge badge-${entry.compatibility}`,
              "data-testid": "volunteer-badge",
              title: `personality score ${entry.personalityScore.toFixed(3)}`,
            },
            [entry.compatibility],
          ),
          select,
        ]),
      );
    }
    panel.append(list);
  }

  // --- inbox -----------------------------------------------------------------------

  async function refreshInbox(): Promise<void> {
    if (!userId) return;
    let notes: InboxNotification[];
    try {
      notes = await client.listNotifications(userId);
    } catch (err) {
      alertMessage(describe(err));
      return;
    }
    testid(root, "unread-count").textContent = String(notes.filter((n) => !n.read).length);
    renderInbox(notes);
  }

  function renderInbox(notes: InboxNotification[]): void {
    const list = testid(root, "inbox-list");
    if (!notes.length) {
      list.replaceChildren(
        el("p", { "data-testid": "inbox-empty" }, ["Nothing here yet."]),
      );
      return;
    }
    list.replaceChildren(
      ...notes
        .slice()
        .reverse() // newest first
        .map((note) => renderNote(note)),
    );
  }

  function renderNote(note: InboxNotification): HTMLElement {
    const card = el("div", { class: "note", "data-testid": "inbox-note" }, [
      el("span", { class: `kind kind-${note.kind}` }, [note.kind]),
      " ",
      el("span", { class: "task-ref" }, [note.taskId]),
      note.read ? "" : el("em", { class: "unread-marker" }, [" (new)"]),
    ]);
    if (!note.read) {
      const markRead = el(
        "button",
        { type: "button", "data-testid": "note-read" },
        ["Mark read"],
      ) as HTMLButtonElement;
      markRead.addEventListener("click", () =>
        withBusy(markRead, async () => {
          try {
            await client.markNotificationRead(userId!, note.id);
          } catch (err) {
            alertMessage(describe(err));
          }
          await refreshInbox();
        }),
      );
      card.append(markRead);
    }
    if (note.kind === "tutoringRequested") {
      const details = el("span", { class: "details", "data-testid": "note-details" });
      client
        .getTask(note.taskId)
        .then((task) => {
          details.textContent = ` ${task.subject}: ${task.description} [${task.state}]`;
        })
        .catch(() => {
          details.textContent = " (request unavailable)";
        });
      const accept = el(
        "button",
        { type: "button", "data-testid": "note-accept" },
        ["Accept"],
      ) as HTMLButtonElement;
      const decline = el(
        "button",
        { type: "button", "data-testid": "note-decline" },
        ["Decline"],
      ) as HTMLButtonElement;
      const respond = (kind: "volunteer" | "decline") => async () => {
        try {
          await client.postTransaction(note.taskId, kind);
          card.append(el("em", { "data-testid": "note-verdict" }, [` ${kind} recorded`]));
          accept.remove();
          decline.remove();
        } catch (err) {
          // server has the final word; surface it without losing the card
          alertMessage(describe(err));
        }
      };
      accept.addEventListener("click", () => withBusy(accept, respond("volunteer")));
      decline.addEventListener("click", () => withBusy(decline, respond("decline")));
      card.append(details, accept, decline);
    }
    return card;
  }

  // --- polling -----------------------------------------------------------------------

  async function refresh(): Promise<void> {
    if (!userId || !client.loggedIn) return;
    await refreshInbox();
    await refreshTask();
  }

  const interval = config.pollIntervalMs ?? 5_000;
  if (interval > 0) {
    timer = setInterval(() => {
      void refresh();
    }, interval);
  }

  renderLogin();
  return {
    client,
    refresh,
    stop(): void {
      if (timer !== null) clearInterval(timer);
    },
  };
}
