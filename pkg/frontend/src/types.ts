/** Wire types mirroring the service's JSON payloads. */

export type Judgment = 'positive' | 'negative' | 'neutral';

export type TransitionLetter =
  | 'a' | 'b' | 'c' | 'd' | 'e' | 'f' | 'g' | 'h' | 'i' | 'j' | 'k';

export interface MosaicSnapshot {
  round: number;
  tiles: string[];
  judgments: Record<string, Judgment>;
}

export interface GroupsSnapshot {
  positive: string[];
  negative: string[];
  neutral: string[];
}

export interface GraphSnapshot {
  nodes: string[];
  /** [u, v, similarity score] with u < v */
  edges: [string, string, number][];
  frontier: string[];
}

export interface SessionSnapshot {
  id: string;
  restriction: string[] | null;
  current_query: Record<string, number> | null;
  ranked: [string, number][] | null;
  mosaic: MosaicSnapshot | null;
  groups: GroupsSnapshot;
  graph: GraphSnapshot | null;
  judged_history: string[];
  transition_log: [string, string][];
}

export interface AlbumDoc {
  id: string;
  name: string;
  annotation: string;
  created_from: 'groups' | 'ranked' | 'mosaic';
  created_at: string;
  images: string[];
}

export interface ImageDoc {
  id: string;
  uri: string;
  info: Record<string, string>;
  index: { term: string; weight: number }[];
}

export interface ApiErrorPayload {
  code: string;
  message: string;
  detail?: unknown;
}

export interface TransitionResponse {
  session: SessionSnapshot;
  album?: AlbumDoc;
}
