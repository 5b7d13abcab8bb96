import type { ComponentEntry } from "./api.js";

export const FOUR_PS = ["Person", "Process", "Product", "Press"];

/**
 * The component catalogue: one row per component, member counts at a
 * glance, and an editor for the selected one. Assigning the selected
 * cluster and saving gloss edits go through the callbacks; the panel
 * itself never talks to the network.
 */
export class ComponentsPanel {
  onSelect: ((componentId: string | null) => void) | null = null;
  onAssign: (() => void) | null = null;
  onSaveGloss: ((componentId: string, gloss: string, fourPs: string[]) => void) | null = null;

  constructor(private container: HTMLElement) {}

  update(
    components: ComponentEntry[],
    selected: string | null,
    canAssign: boolean,
  ): void {
    const doc = this.container.ownerDocument;
    this.container.innerHTML = "";
    const heading = doc.createElement("h2");
    heading.textContent = "Components";
    this.container.appendChild(heading);

    const list = doc.createElement("ul");
    list.className = "component-list";
    for (const component of components) {
      const item = doc.createElement("li");
      item.className = "component-row" + (selected === component.id ? " selected" : "");
      item.dataset.component = component.id;

      const head = doc.createElement("div");
      head.className = "component-head";
      const name = doc.createElement("span");
      name.className = "component-label";
      name.textContent = component.label;
      head.appendChild(name);
      const count = doc.createElement("span");
      count.className = "count";
      count.textContent = String(component.member_words.length);
      head.appendChild(count);
      head.addEventListener("click", () => {
        if (this.onSelect) this.onSelect(selected === component.id ? null : component.id);
      });
      item.appendChild(head);

      if (selected === component.id) {
        item.appendChild(this.buildEditor(component, canAssign));
      }
      list.appendChild(item);
    }
    this.container.appendChild(list);
  }

  private buildEditor(component: ComponentEntry, canAssign: boolean): HTMLElement {
    const doc = this.container.ownerDocument;
    const editor = doc.createElement("div");
    editor.className = "component-editor";

    if (component.member_words.length > 0) {
      const words = doc.createElement("p");
      words.className = "member-words";
      words.textContent = component.member_words
        .map(([lemma, pos]) => `${lemma} (${pos})`)
        .join(", ");
      editor.appendChild(words);
    }

    const assign = doc.createElement("button");
    assign.type = "button";
    assign.className = "assign-button";
    assign.textContent = "Assign selected cluster";
    assign.disabled = !canAssign;
    assign.addEventListener("click", () => {
      if (this.onAssign) this.onAssign();
    });
    editor.appendChild(assign);

    const gloss = doc.createElement("textarea");
    gloss.className = "gloss-input";
    gloss.rows = 4;
    gloss.value = component.gloss;
    editor.appendChild(gloss);

    const tags = doc.createElement("div");
    tags.className = "four-ps";
    const boxes: HTMLInputElement[] = [];
    for (const tag of FOUR_PS) {
      const wrap = doc.createElement("label");
      const box = doc.createElement("input");
      box.type = "checkbox";
      box.value = tag;
      box.checked = component.four_ps.includes(tag);
      boxes.push(box);
      wrap.appendChild(box);
      wrap.appendChild(doc.createTextNode(tag));
      tags.appendChild(wrap);
    }
    editor.appendChild(tags);

    const save = doc.createElement("button");
    save.type = "button";
    save.className = "save-button";
    save.textContent = "Save gloss";
    save.addEventListener("click", () => {
      if (this.onSaveGloss) {
        const picked = boxes.filter((b) => b.checked).map((b) => b.value);
        this.onSaveGloss(component.id, gloss.value, picked);
      }
    });
    editor.appendChild(save);

    return editor;
  }
}
