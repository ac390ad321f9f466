/** Palette export: JSON file download and copy-to-clipboard hex list. */

import type { PaletteDoc } from "./types.js";

export function paletteJson(palette: PaletteDoc): string {
  return JSON.stringify(palette, null, 2) + "\n";
}

export function hexList(palette: PaletteDoc): string {
  return palette.colors.map((c) => c.hex).join("\n");
}

export function downloadPalette(doc: Document, palette: PaletteDoc, filename = "palette.json"): void {
  const blob = new Blob([paletteJson(palette)], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const a = doc.createElement("a");
  a.href = url;
  a.download = filename;
  doc.body.appendChild(a);
  a.click();
  a.remove();
  URL.revokeObjectURL(url);
}

export async function copyHexList(palette: PaletteDoc): Promise<string> {
  const text = hexList(palette);
  await navigator.clipboard.writeText(text);
  return text;
}
