/** DOM panels: dataset picker, weight sliders, hue-term filter, background
 * picker, swatch list with locks, chart preview, history, and export. */

import { classifyTerm, textColorFor } from "./color.js";
import { demoDatasets, parseDataset } from "./data.js";
import type { DemoEntry } from "./data.js";
import { copyHexList, downloadPalette } from "./exporting.js";
import { buildPreview } from "./preview.js";
import {
  Dispatcher,
  Store,
  generateBlocked,
  lightnessRangeFor,
  setAllLocks,
  toggleLock,
} from "./state.js";
import type { AppState } from "./state.js";
import type { ChartDataset } from "./types.js";

const WEIGHT_LABELS = ["point distinctness", "name difference", "color discrimination"];

function h<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text) node.textContent = text;
  return node;
}

function datasetSummary(ds: ChartDataset, name: string): string {
  const counts =
    ds.kind === "scatter"
      ? `${ds.points.length} points`
      : ds.kind === "line"
        ? `${ds.series.length} series`
        : `${ds.bars.length} bars`;
  return `${name} — ${ds.kind}, ${ds.classes.length} classes, ${counts}`;
}

export class UI {
  private readonly doc: Document;
  private termsBuilt = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly store: Store,
    private readonly dispatcher: Dispatcher,
    private readonly demos: DemoEntry[] = demoDatasets(),
  ) {
    this.doc = root.ownerDocument;
    this.build();
    this.store.subscribe((s) => this.render(s));
    this.render(this.store.state);
  }

  private $(id: string): HTMLElement {
    const node = this.root.querySelector(`#${id}`);
    if (!node) throw new Error(`missing element #${id}`);
    return node as HTMLElement;
  }

  private build(): void {
    const d = this.doc;
    this.root.innerHTML = "";

    const controls = h(d, "section", { class: "controls" });

    const dataPanel = h(d, "fieldset", { class: "panel" });
    dataPanel.appendChild(h(d, "legend", {}, "Data"));
    const select = h(d, "select", { id: "demo-select" });
    select.appendChild(h(d, "option", { value: "" }, "choose a demo dataset…"));
    this.demos.forEach((demo, i) =>
      select.appendChild(h(d, "option", { value: String(i) }, demo.name)),
    );
    select.addEventListener("change", () => {
      const i = Number((select as HTMLSelectElement).value);
      if (!Number.isInteger(i) || !(select as HTMLSelectElement).value) return;
      this.loadDataset(this.demos[i].dataset, this.demos[i].name);
    });
    dataPanel.appendChild(select);
    const file = h(d, "input", { type: "file", id: "file-input", accept: ".json,application/json" });
    file.addEventListener("change", () => this.onFileChosen(file as HTMLInputElement));
    dataPanel.appendChild(file);
    dataPanel.appendChild(h(d, "p", { id: "dataset-name", class: "hint" }, "no dataset loaded"));
    controls.appendChild(dataPanel);

    const weightPanel = h(d, "fieldset", { class: "panel" });
    weightPanel.appendChild(h(d, "legend", {}, "Weights"));
    WEIGHT_LABELS.forEach((label, i) => {
      const row = h(d, "label", { class: "weight-row" });
      row.appendChild(h(d, "span", {}, label));
      const slider = h(d, "input", {
        type: "range",
        id: `w${i}`,
        min: "0",
        max: "1",
        step: "0.01",
        value: "1",
      });
      slider.addEventListener("input", () => {
        const weights = [...this.store.state.weights] as AppState["weights"];
        weights[i] = Number((slider as HTMLInputElement).value);
        this.store.update({ weights });
      });
      row.appendChild(slider);
      row.appendChild(h(d, "output", { id: `w${i}-value` }, "1"));
      weightPanel.appendChild(row);
    });
    controls.appendChild(weightPanel);

    const bgPanel = h(d, "fieldset", { class: "panel" });
    bgPanel.appendChild(h(d, "legend", {}, "Background"));
    const bg = h(d, "input", { type: "color", id: "background", value: "#ffffff" });
    bg.addEventListener("input", () => {
      this.store.update({ background: (bg as HTMLInputElement).value.toUpperCase() });
    });
    bgPanel.appendChild(bg);
    bgPanel.appendChild(h(d, "p", { id: "lightness-range", class: "hint" }));
    controls.appendChild(bgPanel);

    const termPanel = h(d, "fieldset", { class: "panel" });
    termPanel.appendChild(h(d, "legend", {}, "Preferred hues"));
    termPanel.appendChild(h(d, "div", { id: "terms" }));
    termPanel.appendChild(
      h(d, "p", { class: "hint" }, "none ticked = any hue; ticking all is the same as none"),
    );
    controls.appendChild(termPanel);

    const runPanel = h(d, "div", { class: "panel run" });
    const generate = h(d, "button", { id: "generate" }, "Generate");
    generate.addEventListener("click", () => {
      void this.dispatcher.generate();
    });
    runPanel.appendChild(generate);
    runPanel.appendChild(h(d, "p", { id: "generate-hint", class: "hint" }));
    controls.appendChild(runPanel);

    const main = h(d, "section", { class: "results" });
    main.appendChild(h(d, "div", { id: "error", class: "banner error", hidden: "" }));
    main.appendChild(h(d, "div", { id: "warnings", class: "banner warning", hidden: "" }));
    main.appendChild(h(d, "div", { id: "preview", class: "preview" }));
    main.appendChild(h(d, "p", { id: "status", class: "hint" }));

    const toolbar = h(d, "div", { class: "toolbar" });
    const lockAll = h(d, "button", { id: "lock-all" }, "Lock all");
    lockAll.addEventListener("click", () =>
      this.store.update(setAllLocks(this.store.state, true)),
    );
    const unlockAll = h(d, "button", { id: "unlock-all" }, "Unlock all");
    unlockAll.addEventListener("click", () =>
      this.store.update(setAllLocks(this.store.state, false)),
    );
    const exportJson = h(d, "button", { id: "export-json" }, "Download JSON");
    exportJson.addEventListener("click", () => {
      const p = this.store.state.palette;
      if (p) downloadPalette(this.doc, p);
    });
    const copyHex = h(d, "button", { id: "copy-hex" }, "Copy hex list");
    copyHex.addEventListener("click", () => {
      const p = this.store.state.palette;
      if (p) void copyHexList(p).catch(() => this.store.update({ error: "clipboard unavailable" }));
    });
    for (const b of [lockAll, unlockAll, exportJson, copyHex]) toolbar.appendChild(b);
    main.appendChild(toolbar);
    main.appendChild(h(d, "ul", { id: "swatches", class: "swatches" }));

    const historyPanel = h(d, "section", { class: "panel history" });
    historyPanel.appendChild(h(d, "h2", {}, "History"));
    historyPanel.appendChild(h(d, "ul", { id: "history" }));

    this.root.appendChild(controls);
    this.root.appendChild(main);
    this.root.appendChild(historyPanel);
  }

  loadDataset(dataset: ChartDataset, name: string): void {
    this.store.update({
      dataset,
      datasetName: name,
      palette: null,
      energy: null,
      error: null,
      warnings: [],
    });
  }

  private onFileChosen(input: HTMLInputElement): void {
    const f = input.files?.[0];
    if (!f) return;
    void f
      .text()
      .then((text) => this.loadDataset(parseDataset(text), f.name))
      .catch((err) =>
        this.store.update({ error: err instanceof Error ? err.message : String(err) }),
      );
  }

  private buildTermBoxes(s: AppState): void {
    if (this.termsBuilt || !s.meta) return;
    this.termsBuilt = true;
    const box = this.$("terms");
    for (const term of s.meta.terms.order) {
      const row = h(this.doc, "label", { class: "term-row" });
      const cb = h(this.doc, "input", { type: "checkbox", "data-term": term });
      cb.addEventListener("change", () => {
        const terms = new Set(this.store.state.terms);
        if ((cb as HTMLInputElement).checked) terms.add(term);
        else terms.delete(term);
        this.store.update({ terms });
      });
      row.appendChild(cb);
      row.appendChild(h(this.doc, "span", {}, term));
      box.appendChild(row);
    }
  }

  private renderSwatches(s: AppState): void {
    const list = this.$("swatches");
    list.replaceChildren();
    if (!s.palette) return;
    s.palette.colors.forEach((c, i) => {
      const item = h(this.doc, "li", { class: "swatch", style: `background:${c.hex}` });
      const btn = h(
        this.doc,
        "button",
        { class: "lock", title: c.locked ? "unlock" : "lock" },
        c.locked ? "🔒" : "🔓",
      );
      btn.addEventListener("click", () => this.store.update(toggleLock(this.store.state, i)));
      item.appendChild(btn);
      const term = s.meta
        ? classifyTerm({ L: c.lab[0], a: c.lab[1], b: c.lab[2] }, s.meta.terms)
        : "";
      const text = h(
        this.doc,
        "span",
        { style: `color:${textColorFor(c.hex)}` },
        term ? `${c.class} · ${c.hex} · ${term}` : `${c.class} · ${c.hex}`,
      );
      item.appendChild(text);
      list.appendChild(item);
    });
  }

  private renderHistory(s: AppState): void {
    const list = this.$("history");
    list.replaceChildren();
    for (const entry of s.history) {
      const item = h(this.doc, "li", { class: "history-entry" });
      const chips = h(this.doc, "span", { class: "chips" });
      for (const c of entry.palette.colors) {
        chips.appendChild(h(this.doc, "i", { class: "chip", style: `background:${c.hex}` }));
      }
      item.appendChild(chips);
      item.appendChild(
        h(
          this.doc,
          "span",
          { class: "meta" },
          `seed ${entry.request.seed} · E=${entry.energy.total.toFixed(3)} · ${entry.timestamp}`,
        ),
      );
      const replay = h(this.doc, "button", { class: "replay" }, "Replay");
      replay.addEventListener("click", () => {
        void this.dispatcher.replay(entry);
      });
      item.appendChild(replay);
      list.appendChild(item);
    }
  }

  private renderPreview(s: AppState): void {
    const box = this.$("preview");
    box.replaceChildren();
    if (!s.dataset || !s.palette || s.palette.colors.length !== s.dataset.classes.length) {
      box.appendChild(
        h(this.doc, "p", { class: "hint" }, "generate a palette to preview the chart"),
      );
      return;
    }
    try {
      box.appendChild(
        buildPreview(this.doc, s.dataset, { ...s.palette, background: s.background }),
      );
    } catch (err) {
      this.store.update({ error: err instanceof Error ? err.message : String(err) });
    }
  }

  private render(s: AppState): void {
    this.buildTermBoxes(s);

    s.weights.forEach((w, i) => {
      const slider = this.$(`w${i}`) as HTMLInputElement;
      if (Number(slider.value) !== w) slider.value = String(w);
      this.$(`w${i}-value`).textContent = w.toFixed(2);
    });

    const [lo, hi] = lightnessRangeFor(s.background);
    this.$("lightness-range").textContent =
      `candidate lightness ${lo.toFixed(0)}–${hi.toFixed(0)} for ${s.background}`;

    this.$("dataset-name").textContent = s.dataset
      ? datasetSummary(s.dataset, s.datasetName)
      : "no dataset loaded";

    const blocked = generateBlocked(s);
    const generate = this.$("generate") as HTMLButtonElement;
    generate.disabled = blocked !== null;
    this.$("generate-hint").textContent = blocked ?? "";

    const error = this.$("error");
    error.hidden = !s.error;
    error.textContent = s.error ?? "";
    const warnings = this.$("warnings");
    warnings.hidden = s.warnings.length === 0;
    warnings.textContent = s.warnings.join(" · ");

    const havePalette = s.palette !== null;
    for (const id of ["lock-all", "unlock-all", "export-json", "copy-hex"]) {
      (this.$(id) as HTMLButtonElement).disabled = !havePalette;
    }

    this.$("status").textContent = s.pending
      ? "optimizing…"
      : s.energy
        ? `energy ${s.energy.total.toFixed(4)} · point distinctness ${s.energy.point_distinctness.toFixed(4)} · name difference ${s.energy.name_difference.toFixed(4)} · color discrimination ${s.energy.color_discrimination.toFixed(4)}`
        : "";

    this.renderSwatches(s);
    this.renderHistory(s);
    this.renderPreview(s);
  }
}
