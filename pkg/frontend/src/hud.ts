// HUD rendering: every displayed numeric is copied verbatim from the
// latest snapshot (tests assert DOM text equals snapshot fields).

import type { Snapshot, Welcome } from "./protocol.js";
import type { ClientState } from "./state.js";

export function buildHud(root: HTMLElement): void {
  root.innerHTML = `
    <div id="hud">
      <div id="status-banner" hidden></div>
      <div id="hud-mode">
        <span id="mode-badge"></span>
        <span id="force-frozen" hidden>force frozen</span>
      </div>
      <div id="hud-force">
        <div id="force-gauge">
          <div id="force-fill"></div>
          <div id="marker-passive" class="gauge-marker"></div>
          <div id="marker-active" class="gauge-marker"></div>
        </div>
        <span id="force-value"></span>
      </div>
      <div id="hud-vitals">
        tick <span id="tick-value"></span>
        health <span id="health-value"></span>
        ammo <span id="ammo-value"></span>
        magazine <span id="magazine-value"></span>
        intruder <span id="intruder-health-value"></span>
      </div>
      <div id="utility-bars"></div>
      <svg id="force-sparkline" width="240" height="40" viewBox="0 0 240 40">
        <polyline id="sparkline-path" fill="none" stroke="currentColor"></polyline>
      </svg>
    </div>`;
}

function text(root: HTMLElement, id: string, value: string): void {
  const el = root.querySelector<HTMLElement>(`#${id}`);
  if (el) el.textContent = value;
}

export function renderHud(root: HTMLElement, state: ClientState): void {
  const snapshot = state.latest;
  if (snapshot === null) return;
  const bot = snapshot.bot;

  const badge = root.querySelector<HTMLElement>("#mode-badge");
  if (badge) {
    badge.textContent = bot.mode;
    badge.className = `badge mode-${bot.mode}`;
  }
  const frozen = root.querySelector<HTMLElement>("#force-frozen");
  if (frozen) frozen.hidden = bot.mode !== "attack"; // attack freezes decay

  text(root, "tick-value", String(snapshot.tick));
  text(root, "force-value", String(bot.force));
  text(root, "health-value", String(bot.health));
  text(root, "ammo-value", String(bot.ammo));
  text(root, "magazine-value", String(bot.magazine));
  text(root, "intruder-health-value", String(snapshot.intruder.health));

  renderForceGauge(root, state, snapshot);
  renderUtilityBars(root, state, snapshot);
  renderSparkline(root, state);
}

function renderForceGauge(root: HTMLElement, state: ClientState, snapshot: Snapshot): void {
  const ceiling = state.welcome?.config.force_ceiling ?? 100;
  const fill = root.querySelector<HTMLElement>("#force-fill");
  if (fill) fill.style.width = `${(100 * snapshot.bot.force) / ceiling}%`;
  placeMarker(root, "#marker-passive", state.welcome?.config.t_passive, ceiling);
  placeMarker(root, "#marker-active", state.welcome?.config.t_active, ceiling);
}

function placeMarker(
  root: HTMLElement,
  selector: string,
  value: number | undefined,
  ceiling: number,
): void {
  const marker = root.querySelector<HTMLElement>(selector);
  if (marker && value !== undefined) {
    marker.style.left = `${(100 * value) / ceiling}%`;
    marker.title = String(value);
  }
}

function renderUtilityBars(root: HTMLElement, state: ClientState, snapshot: Snapshot): void {
  const container = root.querySelector<HTMLElement>("#utility-bars");
  if (!container) return;
  container.hidden = !state.showUtilities;
  container.innerHTML = "";
  const utilities = snapshot.bot.utilities;
  if (utilities === null) return;
  utilities.options.forEach((option, i) => {
    const row = document.createElement("div");
    row.className = i === utilities.chosen ? "utility-row chosen" : "utility-row";
    const label = document.createElement("span");
    label.className = "utility-label";
    label.textContent = option;
    const bar = document.createElement("div");
    bar.className = "utility-bar";
    bar.style.width = `${100 * utilities.probabilities[i]}%`;
    const value = document.createElement("span");
    value.className = "utility-value";
    value.textContent = String(utilities.probabilities[i]);
    row.append(label, bar, value);
    container.append(row);
  });
}

function renderSparkline(root: HTMLElement, state: ClientState): void {
  const svg = root.querySelector<SVGSVGElement>("#force-sparkline");
  const path = root.querySelector<SVGPolylineElement>("#sparkline-path");
  if (!svg || !path) return;
  svg.style.display = state.showForceHistory ? "" : "none";
  const samples = state.history.entries();
  if (samples.length === 0) return;
  const ceiling = state.welcome?.config.force_ceiling ?? 100;
  const width = 240;
  const height = 40;
  const first = samples[0].tick;
  const span = Math.max(1, samples[samples.length - 1].tick - first);
  const points = samples
    .map((s) => {
      const x = ((s.tick - first) / span) * width;
      const y = height - (s.force / ceiling) * height;
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
  path.setAttribute("points", points);
}

export function showBanner(root: HTMLElement, message: string): void {
  const banner = root.querySelector<HTMLElement>("#status-banner");
  if (banner) {
    banner.hidden = false;
    banner.textContent = message;
  }
}

export function hideBanner(root: HTMLElement): void {
  const banner = root.querySelector<HTMLElement>("#status-banner");
  if (banner) banner.hidden = true;
}

export function bannerText(root: HTMLElement): string | null {
  const banner = root.querySelector<HTMLElement>("#status-banner");
  return banner && !banner.hidden ? banner.textContent : null;
}

export { renderHud as render };

export function hudNumeric(root: HTMLElement, id: string): number {
  const el = root.querySelector<HTMLElement>(`#${id}`);
  if (!el || el.textContent === null || el.textContent === "") {
    throw new Error(`no numeric at #${id}`);
  }
  return Number(el.textContent);
}

export type { Welcome };
