import { beforeEach, describe, expect, it } from "vitest";

import type { ApiClient } from "../src/api";
import { FlowController } from "../src/flow";
import { render } from "../src/render";
import { MockClient } from "./mock";

let flow: FlowController;
let root: HTMLElement;

function draw(): void {
  render(flow, root);
}

function flush(): Promise<void> {
  // render() reruns actions through a promise chain; let microtasks drain.
  return new Promise((resolve) => setTimeout(resolve, 0));
}

beforeEach(() => {
  flow = new FlowController(new MockClient() as unknown as ApiClient);
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById("app")!;
});

describe("identity screen", () => {
  it("shows an id input and the education levels", async () => {
    await flow.loadCatalog();
    draw();
    expect(root.querySelector('input[name="stakeholder_id"]')).toBeTruthy();
    const options = [...root.querySelectorAll("option")].map((o) => o.textContent);
    expect(options).toEqual(["PhD", "Master", "Bachelor", "Unspecified"]);
  });

  it("starts a session on submit and renders the grid", async () => {
    await flow.loadCatalog();
    draw();
    (root.querySelector('input[name="stakeholder_id"]') as HTMLInputElement).value = "alice";
    root.querySelector("form")!.dispatchEvent(new Event("submit", { cancelable: true }));
    await flush();
    expect(flow.screen).toBe("grid");
    expect(root.querySelectorAll("tr.grid-row")).toHaveLength(3);
  });
});

describe("grid screen", () => {
  beforeEach(async () => {
    await flow.loadCatalog();
    await flow.startSession("alice", "PhD");
    draw();
  });

  it("puts the left pole at the low end and the right pole at the high end", () => {
    const row = root.querySelector('tr[data-requirement="r01"]')!;
    const left = row.querySelector(".pole-left")!.textContent;
    const right = row.querySelector(".pole-right")!.textContent;
    expect(left).toBe("bad 01");
    expect(right).toBe("good 01");
    const scores = [...row.querySelectorAll(".cell")].map((c) => c.textContent);
    expect(scores).toEqual(["1", "2", "3", "4", "5"]);
  });

  it("marks cells as keyboard-operable radios and reflects selection", async () => {
    const row = root.querySelector('tr[data-requirement="r02"]')!;
    const cell = row.querySelector('button[data-score="4"]') as HTMLButtonElement;
    expect(cell.getAttribute("role")).toBe("radio");
    expect(cell.getAttribute("aria-checked")).toBe("false");
    cell.click();
    await flush();
    const after = root.querySelector(
      'tr[data-requirement="r02"] button[data-score="4"]',
    )!;
    expect(after.getAttribute("aria-checked")).toBe("true");
  });

  it("disables submission until every seed is rated", async () => {
    const button = () => root.querySelector("button.submit-grid") as HTMLButtonElement;
    expect(button().disabled).toBe(true);
    for (const id of ["r01", "r02", "r03"]) {
      (
        root.querySelector(`tr[data-requirement="${id}"] button[data-score="3"]`) as HTMLButtonElement
      ).click();
      await flush();
    }
    expect(button().disabled).toBe(false);
    button().click();
    await flush();
    expect(flow.screen).toBe("recommendations");
  });
});

describe("recommendations screen", () => {
  beforeEach(async () => {
    await flow.loadCatalog();
    await flow.startSession("alice", "PhD");
    for (const id of flow.session!.presented_seeds) flow.setGridScore(id, 4);
    await flow.submitGrid();
    draw();
  });

  it("lists items strictly in the order the service returned", () => {
    const ids = [...root.querySelectorAll("ol.recommendations li")].map(
      (li) => (li as HTMLElement).dataset.requirement,
    );
    expect(ids).toEqual(["r07", "r04", "r10", "r05", "r12"]);
  });

  it("advances to the feedback screen", async () => {
    (root.querySelector("button.to-feedback") as HTMLButtonElement).click();
    await flush();
    expect(flow.screen).toBe("feedback");
    expect(root.querySelectorAll("ul.feedback li")).toHaveLength(5);
  });
});

describe("feedback screen", () => {
  beforeEach(async () => {
    await flow.loadCatalog();
    await flow.startSession("alice", "PhD");
    for (const id of flow.session!.presented_seeds) flow.setGridScore(id, 4);
    await flow.submitGrid();
    flow.proceedToFeedback();
    draw();
  });

  it('labels the zero option "no idea"', () => {
    const zero = root.querySelector('li[data-requirement="r07"] button[data-stars="0"]')!;
    expect(zero.textContent).toBe("no idea");
    const five = root.querySelector('li[data-requirement="r07"] button[data-stars="5"]')!;
    expect(five.textContent).toContain("5");
  });

  it("submits selected stars and shows the completion screen", async () => {
    (
      root.querySelector('li[data-requirement="r07"] button[data-stars="5"]') as HTMLButtonElement
    ).click();
    await flush();
    (
      root.querySelector('li[data-requirement="r10"] button[data-stars="0"]') as HTMLButtonElement
    ).click();
    await flush();
    (root.querySelector("button.submit-feedback") as HTMLButtonElement).click();
    await flush();
    expect(flow.screen).toBe("done");
    expect(flow.session!.state).toBe("FEEDBACK_COLLECTED");
    expect(root.querySelector("p.done")!.textContent).toContain("2 feedback entries");
  });

  it("shows an error alert when an action fails", async () => {
    (root.querySelector("button.submit-feedback") as HTMLButtonElement).disabled = false;
    (root.querySelector("button.submit-feedback") as HTMLButtonElement).click();
    await flush();
    const alert = root.querySelector('[role="alert"]');
    expect(alert).toBeTruthy();
    expect(alert!.textContent).toContain("at least one");
  });
});
