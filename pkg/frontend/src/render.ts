// Canvas grid renderer: terrain from the welcome payload, entities from
// the latest snapshot. Purely presentational; nothing is simulated here.

import type { Snapshot, Welcome } from "./protocol.js";

const CELL = 24;

const TERRAIN_COLORS: Record<string, string> = {
  "#": "#3b3b46",
  ".": "#10131a",
  C: "#274d2b",
};

export function sizeCanvas(canvas: HTMLCanvasElement, welcome: Welcome): void {
  canvas.width = welcome.map.width * CELL;
  canvas.height = welcome.map.height * CELL;
}

export function renderGrid(
  canvas: HTMLCanvasElement,
  welcome: Welcome,
  snapshot: Snapshot | null,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return; // test environments have no 2d context
  welcome.map.rows.forEach((row, y) => {
    for (let x = 0; x < row.length; x += 1) {
      ctx.fillStyle = TERRAIN_COLORS[row[x]] ?? TERRAIN_COLORS["."];
      ctx.fillRect(x * CELL, y * CELL, CELL - 1, CELL - 1);
    }
  });
  if (snapshot === null) return;
  drawEntity(ctx, snapshot.bot.position.x, snapshot.bot.position.y, "#d9534f");
  drawEntity(ctx, snapshot.intruder.position.x, snapshot.intruder.position.y, "#5bc0de");
}

function drawEntity(ctx: CanvasRenderingContext2D, x: number, y: number, color: string): void {
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.arc(x * CELL + CELL / 2, y * CELL + CELL / 2, CELL * 0.35, 0, Math.PI * 2);
  ctx.fill();
}
