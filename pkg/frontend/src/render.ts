import { ApiError } from "./api";
import type { FlowController } from "./flow";
import { EDUCATION_LEVELS } from "./types";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function errorOf(err: unknown): string {
  if (err instanceof ApiError) return `${err.message} [${err.code}]`;
  if (err instanceof Error) return err.message;
  return String(err);
}

/** Renders the current flow screen into `root` and wires up interaction. */
export function render(flow: FlowController, root: HTMLElement): void {
  root.textContent = "";
  const rerender = () => render(flow, root);

  if (flow.lastError) {
    const box = el("p", "error", flow.lastError);
    box.setAttribute("role", "alert");
    root.appendChild(box);
  }

  const run = (action: () => Promise<void> | void) => {
    Promise.resolve()
      .then(action)
      .then(() => {
        flow.lastError = null;
        rerender();
      })
      .catch((err) => {
        flow.lastError = errorOf(err);
        rerender();
      });
  };

  switch (flow.screen) {
    case "identity":
      renderIdentity(flow, root, run);
      break;
    case "grid":
      renderGrid(flow, root, run);
      break;
    case "recommendations":
      renderRecommendations(flow, root, run);
      break;
    case "feedback":
      renderFeedback(flow, root, run);
      break;
    case "done":
      renderDone(flow, root);
      break;
  }
}

type Run = (action: () => Promise<void> | void) => void;

function renderIdentity(flow: FlowController, root: HTMLElement, run: Run): void {
  root.appendChild(el("h2", undefined, "Who are you?"));

  const form = el("form", "identity-form");
  const idLabel = el("label", undefined, "Stakeholder id ");
  const idInput = el("input");
  idInput.name = "stakeholder_id";
  idInput.required = true;
  idLabel.appendChild(idInput);

  const levelLabel = el("label", undefined, "Education level ");
  const levelSelect = el("select");
  levelSelect.name = "education_level";
  for (const level of EDUCATION_LEVELS) {
    const opt = el("option", undefined, level);
    opt.value = level;
    levelSelect.appendChild(opt);
  }
  levelLabel.appendChild(levelSelect);

  const submit = el("button", undefined, "Start");
  submit.type = "submit";

  form.append(idLabel, levelLabel, submit);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    run(() => flow.startSession(idInput.value, levelSelect.value));
  });
  root.appendChild(form);
}

function renderGrid(flow: FlowController, root: HTMLElement, run: Run): void {
  root.appendChild(el("h2", undefined, "Rate these requirements"));
  const scale = flow.catalog!.scale;

  const table = el("table", "grid");
  for (const req of flow.seeds) {
    const row = el("tr", "grid-row");
    row.dataset.requirement = req.id;
    row.appendChild(el("td", "pole pole-left", req.left_pole));

    const cells = el("td", "cells");
    const group = el("div");
    group.setAttribute("role", "radiogroup");
    group.setAttribute("aria-label", req.label);
    for (let score = scale.min; score <= scale.max; score++) {
      const cell = el("button", "cell", String(score));
      cell.type = "button";
      cell.setAttribute("role", "radio");
      cell.setAttribute(
        "aria-checked",
        flow.gridScores.get(req.id) === score ? "true" : "false",
      );
      cell.dataset.score = String(score);
      cell.addEventListener("click", () => run(() => flow.setGridScore(req.id, score)));
      group.appendChild(cell);
    }
    cells.appendChild(group);
    row.appendChild(cells);
    row.appendChild(el("td", "pole pole-right", req.right_pole));
    table.appendChild(row);
  }
  root.appendChild(table);

  const submit = el("button", "submit-grid", "Get recommendations");
  submit.disabled = !flow.gridComplete;
  submit.addEventListener("click", () => run(() => flow.submitGrid()));
  root.appendChild(submit);
}

function renderRecommendations(flow: FlowController, root: HTMLElement, run: Run): void {
  root.appendChild(el("h2", undefined, "You may also want"));
  const list = el("ol", "recommendations");
  for (const item of flow.session!.recommendation!.items) {
    const req = flow.requirement(item.requirement);
    const li = el("li");
    li.dataset.requirement = req.id;
    li.appendChild(el("strong", undefined, req.label));
    li.appendChild(
      el("span", "predicted", ` predicted ${item.clamped_value.toFixed(2)} / ${flow.catalog!.scale.max}`),
    );
    if (req.description) li.appendChild(el("p", "description", req.description));
    list.appendChild(li);
  }
  root.appendChild(list);

  const next = el("button", "to-feedback", "Rate these suggestions");
  next.addEventListener("click", () => run(() => flow.proceedToFeedback()));
  root.appendChild(next);
}

function renderFeedback(flow: FlowController, root: HTMLElement, run: Run): void {
  root.appendChild(el("h2", undefined, "How good were the suggestions?"));
  const list = el("ul", "feedback");
  for (const id of flow.recommendedIds) {
    const req = flow.requirement(id);
    const li = el("li");
    li.dataset.requirement = id;
    li.appendChild(el("span", "label", req.label));

    const group = el("div", "stars");
    group.setAttribute("role", "radiogroup");
    group.setAttribute("aria-label", `stars for ${req.label}`);
    for (let stars = 0; stars <= 5; stars++) {
      const btn = el("button", "star", stars === 0 ? "no idea" : `${stars}★`);
      btn.type = "button";
      btn.setAttribute("role", "radio");
      btn.setAttribute(
        "aria-checked",
        flow.stars.get(id) === stars ? "true" : "false",
      );
      btn.dataset.stars = String(stars);
      btn.addEventListener("click", () => run(() => flow.setStars(id, stars)));
      group.appendChild(btn);
    }
    li.appendChild(group);
    list.appendChild(li);
  }
  root.appendChild(list);

  const submit = el("button", "submit-feedback", "Submit feedback");
  submit.disabled = flow.stars.size === 0;
  submit.addEventListener("click", () => run(() => flow.submitStars()));
  root.appendChild(submit);
}

function renderDone(flow: FlowController, root: HTMLElement): void {
  root.appendChild(el("h2", undefined, "Thanks"));
  root.appendChild(
    el(
      "p",
      "done",
      `Recorded ${flow.session!.feedback.length} feedback entr${
        flow.session!.feedback.length === 1 ? "y" : "ies"
      } for ${flow.session!.stakeholder.id}.`,
    ),
  );
}
