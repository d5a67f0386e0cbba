// Typed client for the tutoring service. Holds one bearer token per
// instance (one instance per browser session); every call is a plain
// fetch, errors carry the HTTP status and the server's JSON body.

import type {
  CreatedTask,
  InboxNotification,
  LoginResponse,
  NewProfile,
  Preference,
  Profile,
  RecommendedEntry,
  Task,
  TransactionKind,
  TransactionResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
  ) {
    super(`HTTP ${status}`);
  }

  /** Field violations from 422 responses, if the server sent any. */
  get violations(): string[] {
    if (typeof this.body === "object" && this.body !== null && "violations" in this.body) {
      const v = (this.body as { violations: unknown }).violations;
      if (Array.isArray(v)) return v.map(String);
    }
    return [];
  }
}

export class ApiClient {
  private token: string | null = null;

  constructor(readonly baseUrl: string) {}

  get loggedIn(): boolean {
    return this.token !== null;
  }

  logout(): void {
    this.token = null;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const doc = text ? JSON.parse(text) : null;
    if (!response.ok) throw new ApiError(response.status, doc);
    return doc as T;
  }

  async login(userId: string, secret: string): Promise<LoginResponse> {
    const doc = await this.request<LoginResponse>("POST", "/auth/login", { userId, secret });
    this.token = doc.token;
    return doc;
  }

  createProfile(profile: NewProfile): Promise<Profile> {
    return this.request("POST", "/users", profile);
  }

  getProfile(id: string): Promise<Profile> {
    return this.request("GET", `/users/${encodeURIComponent(id)}`);
  }

  updateProfile(id: string, profile: NewProfile): Promise<Profile> {
    return this.request("PUT", `/users/${encodeURIComponent(id)}`, profile);
  }

  submitQuestionnaire(id: string, answers: number[]): Promise<{ traits: Profile["traits"] }> {
    return this.request("POST", `/users/${encodeURIComponent(id)}/questionnaire`, { answers });
  }

  listNotifications(id: string, unreadOnly = false): Promise<InboxNotification[]> {
    const query = unreadOnly ? "?unreadOnly=true" : "";
    return this.request("GET", `/users/${encodeURIComponent(id)}/notifications${query}`);
  }

  markNotificationRead(id: string, notificationId: string): Promise<InboxNotification> {
    return this.request(
      "POST",
      `/users/${encodeURIComponent(id)}/notifications/${encodeURIComponent(notificationId)}/read`,
    );
  }

  createTask(subject: string, preference: Preference, description = ""): Promise<CreatedTask> {
    return this.request("POST", "/tasks", { subject, preference, description });
  }

  getTask(taskId: string): Promise<Task> {
    return this.request("GET", `/tasks/${encodeURIComponent(taskId)}`);
  }

  getRecommendations(taskId: string): Promise<RecommendedEntry[]> {
    return this.request("GET", `/tasks/${encodeURIComponent(taskId)}/recommendations`);
  }

  postTransaction(
    taskId: string,
    kind: TransactionKind,
    attributes: Record<string, string> = {},
  ): Promise<TransactionResult> {
    return this.request("POST", `/tasks/${encodeURIComponent(taskId)}/transactions`, {
      kind,
      attributes,
    });
  }
}
