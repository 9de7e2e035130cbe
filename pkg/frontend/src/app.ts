/**
 * The selection form: location / destination / levels+ratio / dimensions,
 * the computed result, and the device list with facet refinement.
 *
 * Labels are kept verbatim from the original Romanian form; English
 * translations live in tooltips. Every number displayed is taken from an
 * API response field; kW and Mcal are only zero-padded to the four
 * decimals the API already rounds to.
 */

import {
  ANY,
  ApiError,
  DeviceRecord,
  FieldError,
  FilterSelection,
  GnGroup,
  SizingRequest,
  SizingResponse,
  SizingServiceClient,
} from "./api.js";

interface FacetOption {
  value: string;
  label: string;
}

const COMBUSTION_FACETS: FacetOption[] = [
  { value: ANY, label: "indiferent" },
  { value: "condensing", label: "in condensatie" },
  { value: "burner", label: "cu arzator" },
];

const BURNER_FACETS: FacetOption[] = [
  { value: ANY, label: "indiferent" },
  { value: "included", label: "inclus" },
  { value: "external", label: "exterior" },
];

const FUEL_FACETS: FacetOption[] = [
  { value: ANY, label: "indiferent" },
  { value: "diesel", label: "motorina" },
  { value: "clu3", label: "CLU3" },
  { value: "naturalgas", label: "gaze naturale" },
  { value: "lpg", label: "GPL" },
];

const FUEL_CHECKBOXES: Array<[string, string]> = [
  ["Diesel", "motorina"],
  ["CLU3", "CLU3"],
  ["NaturalGas", "gaz"],
  ["LPG", "GPL"],
];

const TEMPLATE = `
  <div class="banner" data-role="banner" hidden>
    <span data-role="banner-message"></span>
    <button type="button" data-role="retry" title="Retry">Reîncearcă</button>
  </div>
  <form data-role="form">
    <fieldset data-role="form-fields">
      <legend>Selectare sistem de incalzire</legend>
      <label title="Select the building's location">Selectati zona constructiei:
        <select data-role="city" data-field="city"></select>
      </label>
      <label title="Select the structure's destination">Selectati destinatia constructiei:
        <select data-role="destination" data-field="destination"></select>
      </label>
      <label title="Select the number of levels and the surface/volume ratio">
        Selectati numarul de niveluri si raportul arie/volum:
        <select data-role="levels" data-field="levels"></select>
        <select data-role="ratio" data-field="av_ratio"></select>
      </label>
      <label title="Enter the structure's footprint area, m²">Introduceti suprafata constructiei:
        <input data-role="area" data-field="footprint_area_m2" type="number" step="any" min="0">
      </label>
      <label title="Enter the structure's height, m">Introduceti inaltimea constructiei:
        <input data-role="height" data-field="height_m" type="number" step="any" min="0">
      </label>
      <ul class="field-errors" data-role="field-errors"></ul>
      <button type="button" data-role="compute" title="Compute" disabled>Calculeaza</button>
    </fieldset>
  </form>
  <section data-role="result" hidden>
    <p data-role="result-line"></p>
    <p class="warning" data-role="result-warning" hidden></p>
    <button type="button" data-role="show-list" title="Show the device list">Afișează lista</button>
  </section>
  <section data-role="devices" hidden>
    <h2>LISTA ECHIPAMENTELOR ASOCIATE CERERII</h2>
    <fieldset class="facets" data-role="facets" disabled>
      <div data-facet="combustion"><h3 title="Boiler type">Tipul cazanului</h3></div>
      <div data-facet="burner"><h3 title="Burner type">Tipul arzatorului</h3></div>
      <div data-facet="fuel"><h3 title="Fuel type">Tipul combustibilului</h3></div>
    </fieldset>
    <p data-role="device-empty" hidden>niciun echipament disponibil</p>
    <table>
      <thead><tr><th>Detalii</th><th>Imagine</th></tr></thead>
      <tbody data-role="device-rows"></tbody>
    </table>
  </section>
`;

function roleOf<T extends HTMLElement>(root: HTMLElement, role: string): T {
  const element = root.querySelector(`[data-role="${role}"]`);
  if (!element) throw new Error(`missing element: ${role}`);
  return element as T;
}

export class HeatsApp {
  private readonly banner: HTMLElement;
  private readonly bannerMessage: HTMLElement;
  private readonly retryButton: HTMLButtonElement;
  private readonly formFields: HTMLFieldSetElement;
  private readonly citySelect: HTMLSelectElement;
  private readonly destinationSelect: HTMLSelectElement;
  private readonly levelsSelect: HTMLSelectElement;
  private readonly ratioSelect: HTMLSelectElement;
  private readonly areaInput: HTMLInputElement;
  private readonly heightInput: HTMLInputElement;
  private readonly fieldErrorList: HTMLElement;
  private readonly computeButton: HTMLButtonElement;
  private readonly resultPanel: HTMLElement;
  private readonly resultLine: HTMLElement;
  private readonly resultWarning: HTMLElement;
  private readonly showListButton: HTMLButtonElement;
  private readonly devicePanel: HTMLElement;
  private readonly facetFieldset: HTMLFieldSetElement;
  private readonly deviceRows: HTMLElement;
  private readonly deviceEmpty: HTMLElement;

  private gnGroups: GnGroup[] = [];
  private computed: SizingResponse | null = null;
  private optionsLoaded = false;
  private retryAction: () => void;

  private optionsSeq = 0;
  private computeSeq = 0;
  private devicesSeq = 0;
  private readonly tasks = new Set<Promise<unknown>>();

  constructor(readonly root: HTMLElement, private readonly api: SizingServiceClient) {
    root.innerHTML = TEMPLATE;
    this.banner = roleOf(root, "banner");
    this.bannerMessage = roleOf(root, "banner-message");
    this.retryButton = roleOf(root, "retry");
    this.formFields = roleOf(root, "form-fields");
    this.citySelect = roleOf(root, "city");
    this.destinationSelect = roleOf(root, "destination");
    this.levelsSelect = roleOf(root, "levels");
    this.ratioSelect = roleOf(root, "ratio");
    this.areaInput = roleOf(root, "area");
    this.heightInput = roleOf(root, "height");
    this.fieldErrorList = roleOf(root, "field-errors");
    this.computeButton = roleOf(root, "compute");
    this.resultPanel = roleOf(root, "result");
    this.resultLine = roleOf(root, "result-line");
    this.resultWarning = roleOf(root, "result-warning");
    this.showListButton = roleOf(root, "show-list");
    this.devicePanel = roleOf(root, "devices");
    this.facetFieldset = roleOf(root, "facets");
    this.deviceRows = roleOf(root, "device-rows");
    this.deviceEmpty = roleOf(root, "device-empty");
    this.retryAction = () => this.loadOptions();

    this.renderFacetGroup("combustion", COMBUSTION_FACETS);
    this.renderFacetGroup("burner", BURNER_FACETS);
    this.renderFacetGroup("fuel", FUEL_FACETS);

    this.retryButton.addEventListener("click", () => this.retryAction());
    this.levelsSelect.addEventListener("change", () => {
      this.populateRatios();
      this.refreshComputeEnabled();
    });
    for (const element of [this.citySelect, this.destinationSelect, this.ratioSelect]) {
      element.addEventListener("change", () => this.refreshComputeEnabled());
    }
    for (const element of [this.areaInput, this.heightInput]) {
      element.addEventListener("input", () => this.refreshComputeEnabled());
    }
    this.computeButton.addEventListener("click", () => this.track(this.compute()));
    this.showListButton.addEventListener("click", () => {
      this.devicePanel.hidden = false;
      this.track(this.refreshDevices());
    });
    this.facetFieldset.addEventListener("change", () => {
      if (!this.devicePanel.hidden) this.track(this.refreshDevices());
    });
  }

  /** Resolves once every in-flight request has finished; for tests. */
  async settle(): Promise<void> {
    while (this.tasks.size > 0) {
      await Promise.allSettled([...this.tasks]);
    }
  }

  loadOptions(): Promise<void> {
    return this.track(this.doLoadOptions());
  }

  deviceRowCount(): number {
    return this.deviceRows.querySelectorAll("[data-device-id]").length;
  }

  selectedFilters(): FilterSelection {
    return {
      combustion: this.selectedFacet("combustion"),
      burner: this.selectedFacet("burner"),
      fuel: this.selectedFacet("fuel"),
    };
  }

  setFacet(facet: string, value: string): void {
    const inputs = this.facetFieldset.querySelectorAll<HTMLInputElement>(
      `input[name="facet-${facet}"]`,
    );
    const input = [...inputs].find((candidate) => candidate.value === value);
    if (!input) throw new Error(`no ${facet} facet option ${value}`);
    for (const other of inputs) other.checked = other === input;
    this.facetFieldset.dispatchEvent(new Event("change", { bubbles: true }));
  }

  private track<T>(task: Promise<T>): Promise<T> {
    this.tasks.add(task);
    task.finally(() => this.tasks.delete(task)).catch(() => undefined);
    return task;
  }

  private async doLoadOptions(): Promise<void> {
    const seq = ++this.optionsSeq;
    try {
      const [cities, destinations, gnGroups] = await Promise.all([
        this.api.getCities(),
        this.api.getDestinations(),
        this.api.getGnOptions(),
      ]);
      if (seq !== this.optionsSeq) return;
      this.gnGroups = gnGroups.filter((group) => group.ratios.length > 0);
      this.fillSelect(this.citySelect, cities.map((c) => c.name));
      this.fillSelect(this.destinationSelect, destinations.map((d) => d.name));
      this.fillSelect(this.levelsSelect, this.gnGroups.map((g) => String(g.levels)));
      this.populateRatios();
      this.optionsLoaded = true;
      this.formFields.disabled = false;
      this.hideBanner();
    } catch (error) {
      if (seq !== this.optionsSeq) return;
      this.optionsLoaded = false;
      this.formFields.disabled = true;
      this.retryAction = () => this.loadOptions();
      this.showBanner(error);
    }
    this.refreshComputeEnabled();
  }

  private async compute(): Promise<void> {
    const request = this.readForm();
    if (!request) return;
    const seq = ++this.computeSeq;
    this.clearFieldErrors();
    try {
      const result = await this.api.computeSizing(request);
      if (seq !== this.computeSeq) return;
      this.computed = result;
      this.hideBanner();
      this.renderResult(result);
    } catch (error) {
      if (seq !== this.computeSeq) return;
      if (error instanceof ApiError && error.status === 422) {
        this.computed = null;
        this.resultPanel.hidden = true;
        this.devicePanel.hidden = true;
        this.facetFieldset.disabled = true;
        this.showFieldErrors(error.details);
      } else {
        this.retryAction = () => this.track(this.compute());
        this.showBanner(error);
      }
    }
  }

  private async refreshDevices(): Promise<void> {
    if (!this.computed) return;
    const seq = ++this.devicesSeq;
    try {
      const page = await this.api.queryDevices(this.computed.q_kw, this.selectedFilters());
      if (seq !== this.devicesSeq) return;
      this.hideBanner();
      this.renderDevices(page.devices);
    } catch (error) {
      if (seq !== this.devicesSeq) return;
      // keep whatever list was already rendered
      this.retryAction = () => this.track(this.refreshDevices());
      this.showBanner(error);
    }
  }

  private readForm(): SizingRequest | null {
    const area = Number(this.areaInput.value);
    const height = Number(this.heightInput.value);
    if (
      !this.citySelect.value ||
      !this.destinationSelect.value ||
      !this.levelsSelect.value ||
      !this.ratioSelect.value ||
      !(area > 0) ||
      !(height > 0)
    ) {
      return null;
    }
    return {
      city: this.citySelect.value,
      destination: this.destinationSelect.value,
      levels: Number(this.levelsSelect.value),
      av_ratio: Number(this.ratioSelect.value),
      footprint_area_m2: area,
      height_m: height,
    };
  }

  private refreshComputeEnabled(): void {
    this.computeButton.disabled = !this.optionsLoaded || this.readForm() === null;
  }

  private populateRatios(): void {
    const group = this.gnGroups.find((g) => String(g.levels) === this.levelsSelect.value);
    this.ratioSelect.innerHTML = "";
    for (const ratio of group?.ratios ?? []) {
      const option = document.createElement("option");
      option.value = String(ratio);
      option.textContent = ratio.toFixed(2);
      this.ratioSelect.appendChild(option);
    }
  }

  private fillSelect(select: HTMLSelectElement, values: string[]): void {
    select.innerHTML = "";
    for (const value of values) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value;
      select.appendChild(option);
    }
  }

  private renderResult(result: SizingResponse): void {
    this.resultLine.textContent =
      `Rezultatul este: ${result.q_kw.toFixed(4)} kW (${result.q_mcal.toFixed(4)} MCal)`;
    this.resultWarning.hidden = result.warning === undefined;
    this.resultWarning.textContent = result.warning ?? "";
    this.resultPanel.hidden = false;
    this.facetFieldset.disabled = false;
    if (!this.devicePanel.hidden) this.track(this.refreshDevices());
  }

  private renderDevices(devices: DeviceRecord[]): void {
    this.deviceRows.innerHTML = "";
    this.deviceEmpty.hidden = devices.length > 0;
    for (const device of devices) {
      const row = document.createElement("tr");
      row.setAttribute("data-device-id", device.id);
      const details = document.createElement("td");
      details.appendChild(this.line(`Producator: ${device.producer}`));
      details.appendChild(this.line(`Model: ${device.model}`));
      details.appendChild(
        this.line(`Putere: ${device.power_min_kw.toFixed(2)}-${device.power_max_kw.toFixed(2)}kW`),
      );
      details.appendChild(
        this.checkboxLine("Ardere: ", [
          ["Condensing", "condensatie"],
          ["Burner", "arzator"],
        ], device.combustion),
      );
      details.appendChild(this.checkboxLine("Combustibil: ", FUEL_CHECKBOXES, device.fuels));
      row.appendChild(details);
      const image = document.createElement("td");
      image.textContent = device.image_ref ?? "";
      row.appendChild(image);
      this.deviceRows.appendChild(row);
    }
  }

  private line(text: string): HTMLElement {
    const p = document.createElement("p");
    p.textContent = text;
    return p;
  }

  private checkboxLine(prefix: string, options: Array<[string, string]>, present: string[]): HTMLElement {
    const p = document.createElement("p");
    p.appendChild(document.createTextNode(prefix));
    for (const [token, label] of options) {
      const box = document.createElement("input");
      box.type = "checkbox";
      box.disabled = true;
      box.checked = present.includes(token);
      p.appendChild(box);
      p.appendChild(document.createTextNode(` ${label} `));
    }
    return p;
  }

  private renderFacetGroup(facet: string, options: FacetOption[]): void {
    const container = this.facetFieldset.querySelector(`[data-facet="${facet}"]`)!;
    for (const { value, label } of options) {
      const wrapper = document.createElement("label");
      const radio = document.createElement("input");
      radio.type = "radio";
      radio.name = `facet-${facet}`;
      radio.setAttribute("value", value);
      radio.checked = value === ANY;
      wrapper.appendChild(radio);
      wrapper.appendChild(document.createTextNode(label));
      container.appendChild(wrapper);
    }
  }

  private selectedFacet(facet: string): string {
    const inputs = this.facetFieldset.querySelectorAll<HTMLInputElement>(
      `input[name="facet-${facet}"]`,
    );
    return [...inputs].find((input) => input.checked)?.value ?? ANY;
  }

  private showFieldErrors(details: FieldError[]): void {
    this.clearFieldErrors();
    for (const detail of details) {
      const item = document.createElement("li");
      item.setAttribute("data-error-field", detail.field);
      item.textContent = `${detail.field}: ${detail.message}`;
      this.fieldErrorList.appendChild(item);
    }
  }

  private clearFieldErrors(): void {
    this.fieldErrorList.innerHTML = "";
  }

  private showBanner(error: unknown): void {
    this.bannerMessage.textContent = error instanceof Error ? error.message : String(error);
    this.banner.hidden = false;
  }

  private hideBanner(): void {
    this.banner.hidden = true;
  }
}

export function initApp(root: HTMLElement, api: SizingServiceClient): HeatsApp {
  const app = new HeatsApp(root, api);
  app.loadOptions();
  return app;
}
