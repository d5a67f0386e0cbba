// Wire types for the tutoring service API (camelCase JSON bodies).

export type Gender = "female" | "male" | "nonbinary" | "undisclosed";
export type Preference = "similar" | "different" | "indifferent";
export type TaskState = "open" | "pendingSelection" | "completed" | "cancelled" | "expired";
export type Compatibility = "low" | "medium" | "high";
export type NotificationKind =
  | "tutoringRequested"
  | "tutorVolunteered"
  | "tutorDeclinedAll"
  | "tutorSelected"
  | "taskCancelled";

export interface Traits {
  extraversion: number;
  agreeableness: number;
  conscientiousness: number;
  emotionalStability: number;
  openness: number;
}

export interface GeoLocation {
  latitudeDeg: number;
  longitudeDeg: number;
}

export interface Profile {
  id: string;
  displayName: string;
  gender: Gender;
  location: GeoLocation;
  traits: Traits;
  competences: Record<string, number>;
}

export interface NewProfile {
  id?: string;
  displayName: string;
  gender: Gender;
  location: GeoLocation;
  traits?: Traits;
  competences: Record<string, number>;
}

export interface RecommendedEntry {
  candidateId: string;
  tier: number;
  competence: number;
  distanceM: number;
  personalityScore: number;
  compatibility: Compatibility;
  diversified: boolean;
}

export interface Task {
  id: string;
  requesterId: string;
  subject: string;
  preference: Preference;
  description: string;
  createdAt: string;
  state: TaskState;
  recommended: RecommendedEntry[];
  responses: Record<string, "volunteered" | "declined">;
  selectedTutorId: string | null;
}

export interface CreatedTask extends Task {
  notifiedTutorIds: string[];
}

export interface InboxNotification {
  id: string;
  recipientId: string;
  taskId: string;
  kind: NotificationKind;
  at: string;
  read: boolean;
}

export interface LoginResponse {
  token: string;
  expiresAt: string;
}

export interface TransactionResult {
  task: Task;
  notified: InboxNotification[];
}

export type TransactionKind = "volunteer" | "decline" | "bestResponse" | "cancel";
