// Browser entry point: copies view models into the DOM and translates
// control events into scenario actions. All logic lives in the modules
// this file wires together.

import { WorkbenchApi } from "./api.js";
import { WorkbenchController } from "./controller.js";
import type { BoundJson, ConfigJson } from "./types.js";

function apiBase(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("api") ?? "http://127.0.0.1:8080";
}

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (element === null) throw new Error(`missing #${id}`);
  return element as T;
}

function readBound(row: HTMLTableRowElement): BoundJson {
  const select = row.querySelector<HTMLSelectElement>(
    'select[data-action="bound-type"]',
  )!;
  const input = row.querySelector<HTMLInputElement>(
    'input[data-action="bound-value"]',
  )!;
  const value = Math.max(0, Math.trunc(Number(input.value) || 0));
  return { type: select.value as BoundJson["type"], value };
}

function populateScenarioTools(config: ConfigJson): void {
  const select = byId<HTMLSelectElement>("remove-candidate");
  select.innerHTML = config.roster
    .map(
      (c) =>
        `<option value="${c.candidate_id}">${c.display_name} (${c.candidate_id})</option>`,
    )
    .join("");

  const attributes = Array.from(
    new Set(config.roster.flatMap((c) => Object.keys(c.attributes))),
  ).sort();
  const holder = byId<HTMLDivElement>("hypothetical-attributes");
  holder.innerHTML = attributes
    .map(
      (a) =>
        `<label>${a} <input type="text" data-hypothetical-attribute="${a}"></label>`,
    )
    .join(" ");
}

function main(): void {
  const editor = byId<HTMLDivElement>("editor");
  const implication = byId<HTMLDivElement>("implication");
  const status = byId<HTMLDivElement>("status");
  const undoButton = byId<HTMLButtonElement>("undo");
  const redoButton = byId<HTMLButtonElement>("redo");

  const controller = new WorkbenchController(
    new WorkbenchApi(apiBase()),
    (view) => {
      editor.innerHTML = view.editorHtml;
      implication.innerHTML = view.implicationHtml;
      status.innerHTML = view.statusHtml;
      undoButton.disabled = !view.canUndo;
      redoButton.disabled = !view.canRedo;
    },
  );

  // bound/preference edits arrive as change events on editor controls
  editor.addEventListener("change", (event) => {
    const target = event.target as HTMLElement;
    const action = target.dataset.action;
    if (action === "bound-type" || action === "bound-value") {
      const row = target.closest("tr");
      if (row === null) return;
      controller.apply({
        kind: "set_bound",
        attribute: target.dataset.attribute!,
        category: target.dataset.category!,
        bound: readBound(row as HTMLTableRowElement),
      });
    } else if (action === "preference") {
      const rank = Math.trunc(Number((target as HTMLInputElement).value) || 0);
      controller.apply({
        kind: "set_preference",
        attribute: target.dataset.attribute!,
        preference_rank: rank,
      });
    }
  });

  editor.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.dataset.action === "remove-criterion") {
      controller.apply({
        kind: "remove_criterion",
        attribute: target.dataset.attribute!,
      });
    }
  });

  undoButton.addEventListener("click", () => controller.undo());
  redoButton.addEventListener("click", () => controller.redo());

  byId<HTMLButtonElement>("remove-candidate-button").addEventListener(
    "click",
    () => {
      const select = byId<HTMLSelectElement>("remove-candidate");
      if (select.value) {
        controller.apply({ kind: "remove_candidate", candidate_id: select.value });
      }
    },
  );

  byId<HTMLButtonElement>("hypothetical-add").addEventListener("click", () => {
    const name = byId<HTMLInputElement>("hypothetical-name").value.trim();
    const votes = Math.max(
      0,
      Math.trunc(Number(byId<HTMLInputElement>("hypothetical-votes").value) || 0),
    );
    const attributes: Record<string, string> = {};
    document
      .querySelectorAll<HTMLInputElement>("[data-hypothetical-attribute]")
      .forEach((input) => {
        attributes[input.dataset.hypotheticalAttribute!] = input.value.trim();
      });
    if (name === "") return;
    controller.apply({
      kind: "set_hypothetical",
      candidate: { display_name: name, attributes, assumed_votes: votes },
    });
  });

  byId<HTMLButtonElement>("hypothetical-clear").addEventListener("click", () =>
    controller.apply({ kind: "clear_hypothetical" }),
  );

  controller
    .load()
    .then(() => {
      const config = controller.config;
      if (config !== null) populateScenarioTools(config);
    })
    .catch((error) => {
      status.innerHTML = `<p class="error">could not load the election: ${String(error)}</p>`;
    });
}

main();
