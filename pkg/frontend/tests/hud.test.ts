// DOM-level HUD conformance: every rendered numeric equals the
// corresponding field of the fixture snapshot.

import { beforeEach, describe, expect, it } from "vitest";

import { bannerText, buildHud, hudNumeric, renderHud, showBanner } from "../src/hud.js";
import { ClientState } from "../src/state.js";
import { duel, patrol } from "./fixtures.js";

function freshState(transcript: typeof duel, upTo: number): ClientState {
  const state = new ClientState();
  state.welcome = transcript.welcome;
  for (const snap of transcript.snapshots.slice(0, upTo)) state.acceptSnapshot(snap);
  return state;
}

describe("HUD numerics equal snapshot fields", () => {
  let root: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = "<div id='app'></div>";
    root = document.getElementById("app")!;
    buildHud(root);
  });

  it("renders every vitals numeric verbatim, for every fixture snapshot", () => {
    for (let k = 1; k <= duel.snapshots.length; k += 1) {
      const state = freshState(duel, k);
      renderHud(root, state);
      const snap = duel.snapshots[k - 1];
      expect(hudNumeric(root, "tick-value")).toBe(snap.tick);
      expect(hudNumeric(root, "force-value")).toBe(snap.bot.force);
      expect(hudNumeric(root, "health-value")).toBe(snap.bot.health);
      expect(hudNumeric(root, "ammo-value")).toBe(snap.bot.ammo);
      expect(hudNumeric(root, "magazine-value")).toBe(snap.bot.magazine);
      expect(hudNumeric(root, "intruder-health-value")).toBe(snap.intruder.health);
    }
  });

  it("shows the mode badge and frozen-force indicator in attack", () => {
    const state = freshState(duel, 1);
    renderHud(root, state);
    const badge = root.querySelector("#mode-badge")!;
    expect(badge.textContent).toBe("attack");
    expect(badge.className).toContain("mode-attack");
    expect(root.querySelector<HTMLElement>("#force-frozen")!.hidden).toBe(false);
  });

  it("hides the frozen indicator outside attack", () => {
    const state = freshState(patrol, 1);
    renderHud(root, state);
    expect(root.querySelector("#mode-badge")!.textContent).toBe("patrol");
    expect(root.querySelector<HTMLElement>("#force-frozen")!.hidden).toBe(true);
  });

  it("draws one utility bar per option with the snapshot probabilities", () => {
    const state = freshState(duel, 2);
    renderHud(root, state);
    const snap = duel.snapshots[1];
    const utilities = snap.bot.utilities!;
    const rows = root.querySelectorAll(".utility-row");
    expect(rows.length).toBe(utilities.options.length);
    rows.forEach((row, i) => {
      expect(row.querySelector(".utility-label")!.textContent).toBe(utilities.options[i]);
      expect(Number(row.querySelector(".utility-value")!.textContent)).toBe(
        utilities.probabilities[i],
      );
      const width = (row.querySelector(".utility-bar") as HTMLElement).style.width;
      expect(width).toBe(`${100 * utilities.probabilities[i]}%`);
    });
    const chosen = root.querySelectorAll(".utility-row.chosen");
    expect(chosen.length).toBe(1);
    expect(chosen[0].querySelector(".utility-label")!.textContent).toBe(
      utilities.options[utilities.chosen],
    );
  });

  it("shows utility bars even in patrol mode", () => {
    const state = freshState(patrol, 1);
    renderHud(root, state);
    const labels = [...root.querySelectorAll(".utility-label")].map((el) => el.textContent);
    expect(new Set(labels)).toEqual(new Set(["patrol_move", "rest", "chat"]));
  });

  it("positions the force gauge markers from the welcome thresholds", () => {
    const state = freshState(duel, 1);
    renderHud(root, state);
    const cfg = duel.welcome.config;
    const active = root.querySelector<HTMLElement>("#marker-active")!;
    const passive = root.querySelector<HTMLElement>("#marker-passive")!;
    expect(active.style.left).toBe(`${(100 * cfg.t_active) / cfg.force_ceiling}%`);
    expect(passive.style.left).toBe(`${(100 * cfg.t_passive) / cfg.force_ceiling}%`);
    expect(Number(active.title)).toBe(cfg.t_active);
    expect(Number(passive.title)).toBe(cfg.t_passive);
  });

  it("scales the force fill against the configured ceiling", () => {
    const state = freshState(duel, 3);
    renderHud(root, state);
    const snap = duel.snapshots[2];
    const fill = root.querySelector<HTMLElement>("#force-fill")!;
    const ceiling = duel.welcome.config.force_ceiling;
    expect(fill.style.width).toBe(`${(100 * snap.bot.force) / ceiling}%`);
  });

  it("appends force history to the sparkline as snapshots arrive", () => {
    const state = freshState(duel, duel.snapshots.length);
    renderHud(root, state);
    const points = root.querySelector("#sparkline-path")!.getAttribute("points")!;
    expect(points.split(" ").length).toBe(duel.snapshots.length);
  });

  it("honors the HUD toggles", () => {
    const state = freshState(duel, 1);
    state.showUtilities = false;
    state.showForceHistory = false;
    renderHud(root, state);
    expect(root.querySelector<HTMLElement>("#utility-bars")!.hidden).toBe(true);
    expect(root.querySelector<SVGSVGElement>("#force-sparkline")!.style.display).toBe("none");
  });

  it("renders only snapshot data: no snapshot, no numerics", () => {
    const state = new ClientState();
    renderHud(root, state);
    expect(() => hudNumeric(root, "tick-value")).toThrow();
  });

  it("banner helper surfaces connection problems", () => {
    showBanner(root, "connection failed — press R to retry");
    expect(bannerText(root)).toContain("connection failed");
  });
});
