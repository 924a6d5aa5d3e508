/** View state and its transitions: load, seek, drag, playback.
 *
 * All transitions are pure (state in, state out); the app shell owns the
 * DOM and timers.  A drag that collapses the construction keeps the last
 * good figure and records a degeneracy message instead of crashing.
 */

import {
  agreementError, anchorsFromWitness, DegenerateFigure, executeSteps,
  freePointLabels, type Figure, type PathParam,
} from "./geometry";
import { parseDocument, type ProofDocument, type Vec2 } from "./types";

export const AGREEMENT_TOL = 1e-9;

export interface PlayState {
  mode: "paused" | "playing";
  msPerStep: number;
}

export interface ViewState {
  doc: ProofDocument;
  currentStep: number;
  dragOverrides: Map<string, Vec2>;
  playState: PlayState;
  /** Current (possibly dragged) geometry. */
  figure: Figure;
  /** Geometry at load time; the world-to-screen fit is anchored to it. */
  initialFigure: Figure;
  /** Path parameters of on-carrier points, fixed at load time. */
  params: Map<string, PathParam>;
  freePoints: Set<string>;
  /** Set when the local interpreter disagrees with the embedded witness. */
  warning: string | null;
  /** Set when the dragged figure is degenerate (figure keeps last good). */
  degenerate: string | null;
}

/** Parse, validate, re-execute, and check interpreter agreement. */
export function load(text: string): ViewState {
  const doc = parseDocument(text);
  const steps = doc.construction.steps;
  const anchors = anchorsFromWitness(steps, doc.witness.coords);
  const { figure, params } = executeSteps(steps, {
    anchors,
    witnessCoords: doc.witness.coords,
  });
  const err = agreementError(figure, doc.witness.coords);
  const warning = err <= AGREEMENT_TOL
    ? null
    : `interpreter disagrees with the embedded witness by ${err.toExponential(3)}`;
  return {
    doc,
    currentStep: 0,
    dragOverrides: new Map(),
    playState: { mode: "paused", msPerStep: 1200 },
    figure,
    initialFigure: figure,
    params,
    freePoints: freePointLabels(steps),
    warning,
    degenerate: null,
  };
}

/** Jump to a step; out-of-range indices are clamped. */
export function seek(state: ViewState, stepIndex: number): ViewState {
  const last = state.doc.steps.length - 1;
  const i = Math.max(0, Math.min(last, Math.trunc(stepIndex)));
  return { ...state, currentStep: i };
}

export function togglePlay(state: ViewState): ViewState {
  const mode = state.playState.mode === "playing" ? "paused" : "playing";
  return { ...state, playState: { ...state.playState, mode } };
}

/** One playback tick: advance a playing state, pausing after the last step. */
export function tick(state: ViewState): ViewState {
  if (state.playState.mode !== "playing") return state;
  if (state.currentStep >= state.doc.steps.length - 1) {
    return { ...state, playState: { ...state.playState, mode: "paused" } };
  }
  return seek(state, state.currentStep + 1);
}

/** Move a free point and re-execute the construction. */
export function dragPoint(state: ViewState, label: string, x: number, y: number): ViewState {
  if (!state.freePoints.has(label)) {
    throw new Error(`${label} is not a free point`);
  }
  const dragOverrides = new Map(state.dragOverrides);
  dragOverrides.set(label, [x, y]);
  const anchors = anchorsFromWitness(state.doc.construction.steps, state.doc.witness.coords);
  for (const [l, p] of dragOverrides) anchors.set(l, p);
  try {
    const { figure } = executeSteps(state.doc.construction.steps, {
      anchors,
      params: state.params,
    });
    return { ...state, dragOverrides, figure, degenerate: null };
  } catch (e) {
    if (e instanceof DegenerateFigure) {
      return { ...state, dragOverrides, degenerate: e.message };
    }
    throw e;
  }
}
