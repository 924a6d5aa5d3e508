// @vitest-environment happy-dom
/** Shell tests against the HTML artifact the pipeline actually produces:
 * the embedded JSON block is lifted out of a rendered page exactly as a
 * browser's parser would hand it to us, then the app mounts on it.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { beforeEach, expect, test, vi } from "vitest";

// import.meta.url is not a file URL under the DOM test environment
const html = readFileSync(
  join(process.cwd(), "test/fixtures/euler.html"), "utf8");

function embeddedJson(): string {
  const m = html.match(
    /<script type="application\/json" id="pww-document">\n([\s\S]*?)<\/script>/);
  if (!m) throw new Error("fixture has no embedded document block");
  return m[1]!;
}

function mount(jsonText: string | null): void {
  document.head.innerHTML = "";
  document.body.innerHTML = '<div id="app"></div>';
  if (jsonText !== null) {
    const block = document.createElement("script");
    block.setAttribute("type", "application/json");
    block.id = "pww-document";
    block.textContent = jsonText;
    document.body.appendChild(block);
  }
}

beforeEach(() => {
  vi.resetModules();
});

test("mounts the player on the rendered page's embedded document", async () => {
  mount(embeddedJson());
  await import("../src/app");
  const app = document.getElementById("app")!;
  expect(app.querySelector(".pww-header")?.textContent).toBe("G, H, O are collinear");
  expect(app.querySelector(".pww-figure svg")).not.toBeNull();
  expect(app.querySelector(".pww-caption")?.innerHTML).toContain("pt-name");
  const slider = app.querySelector("input[type=range]") as HTMLInputElement;
  expect(slider).not.toBeNull();
  expect(slider.min).toBe("0");
  expect(Number(slider.max)).toBeGreaterThan(0);
  expect(app.querySelector(".pww-error")).toBeNull();
});

test("stepping controls advance the caption and figure", async () => {
  mount(embeddedJson());
  await import("../src/app");
  const app = document.getElementById("app")!;
  const label = app.querySelector(".pww-step-label")!;
  expect(label.textContent).toContain("s1 /");
  const buttons = app.querySelectorAll("button");
  const next = buttons[2] as HTMLButtonElement; // prev, play, next
  next.click();
  expect(label.textContent).toContain("s2 /");
});

test("a broken document produces one error panel and no figure", async () => {
  mount('{"version": "pww-1", "truncated');
  await import("../src/app");
  const app = document.getElementById("app")!;
  expect(app.querySelector(".pww-error")?.textContent).toContain("not valid JSON");
  expect(app.querySelector("svg")).toBeNull();
});

test("a page without a document block explains itself", async () => {
  mount(null);
  await import("../src/app");
  const app = document.getElementById("app")!;
  expect(app.querySelector(".pww-error")?.textContent).toContain("no embedded pww-document");
});
