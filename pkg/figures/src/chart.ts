import type { BarGroup } from "./types.js";

const WIDTH = 720;
const HEIGHT = 420;
const MARGIN = { top: 48, right: 24, bottom: 64, left: 56 };
const COLORS = ["#4878a8", "#e49444", "#5aa469", "#d1605e", "#857aab"];

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

/** Render grouped vertical bars (percent scale, 0-100) as an SVG string.
 * Bar heights are linear in the supplied values; the values themselves
 * come straight from the CSV. */
export function groupedBarSvg(title: string, groups: BarGroup[]): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const barLabels = uniqueBarLabels(groups);
  const groupWidth = plotW / Math.max(groups.length, 1);
  const barWidth = (groupWidth * 0.8) / Math.max(barLabels.length, 1);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}"` +
      ` viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">` +
      `${esc(title)}</text>`,
  );

  // y axis: 0..100 percent with gridlines every 20
  for (let v = 0; v <= 100; v += 20) {
    const y = MARGIN.top + plotH - (v / 100) * plotH;
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${WIDTH - MARGIN.right}"` +
        ` y2="${y}" stroke="#ddd"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end"` +
        ` font-size="11">${v}</text>`,
    );
  }
  parts.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" font-size="12"` +
      ` transform="rotate(-90 16 ${MARGIN.top + plotH / 2})"` +
      ` text-anchor="middle">correct handovers (%)</text>`,
  );

  groups.forEach((group, gi) => {
    const gx = MARGIN.left + gi * groupWidth + groupWidth * 0.1;
    group.bars.forEach((bar) => {
      const bi = barLabels.indexOf(bar.label);
      const h = (Math.max(0, Math.min(100, bar.value)) / 100) * plotH;
      const x = gx + bi * barWidth;
      const y = MARGIN.top + plotH - h;
      const color = COLORS[bi % COLORS.length];
      parts.push(
        `<rect class="bar" x="${x.toFixed(2)}" y="${y.toFixed(2)}"` +
          ` width="${(barWidth * 0.9).toFixed(2)}" height="${h.toFixed(2)}"` +
          ` fill="${color}" data-group="${esc(group.label)}"` +
          ` data-bar="${esc(bar.label)}" data-value="${esc(bar.raw)}"/>`,
      );
      parts.push(
        `<text x="${(x + barWidth * 0.45).toFixed(2)}" y="${(y - 4).toFixed(2)}"` +
          ` text-anchor="middle" font-size="9">${esc(bar.value.toFixed(1))}</text>`,
      );
    });
    parts.push(
      `<text x="${gx + groupWidth * 0.4}" y="${HEIGHT - MARGIN.bottom + 18}"` +
        ` text-anchor="middle" font-size="11">${esc(group.label)}</text>`,
    );
  });

  // legend
  barLabels.forEach((label, bi) => {
    const lx = MARGIN.left + bi * 130;
    const ly = HEIGHT - 20;
    parts.push(
      `<rect x="${lx}" y="${ly - 10}" width="12" height="12"` +
        ` fill="${COLORS[bi % COLORS.length]}"/>`,
    );
    parts.push(
      `<text x="${lx + 16}" y="${ly}" font-size="11">${esc(label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export function uniqueBarLabels(groups: BarGroup[]): string[] {
  const labels: string[] = [];
  for (const g of groups) {
    for (const b of g.bars) {
      if (!labels.includes(b.label)) {
        labels.push(b.label);
      }
    }
  }
  return labels;
}
