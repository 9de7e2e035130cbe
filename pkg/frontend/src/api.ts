/**
 * Typed client for the sizing service's /v1 endpoints. The UI talks to the
 * API only through this module and never recomputes any physics itself.
 */

export interface CityEntry {
  name: string;
  design_outside_temp_c: number;
}

export interface DestinationEntry {
  name: string;
  inside_temp_c: number;
}

export interface GnGroup {
  levels: number;
  ratios: number[];
}

export interface SizingRequest {
  city: string;
  destination: string;
  levels: number;
  av_ratio: number;
  footprint_area_m2: number;
  height_m: number;
}

export interface SizingResponse {
  q_kw: number;
  q_mcal: number;
  q_watts: number;
  gn_used: number;
  gn_clamped: boolean;
  volume_m3: number;
  t_inside_c: number;
  t_outside_c: number;
  warning?: string;
}

export interface DeviceRecord {
  id: string;
  producer: string;
  model: string;
  power_min_kw: number;
  power_max_kw: number;
  combustion: string[];
  burner_type: string;
  fuels: string[];
  description: string | null;
  image_ref: string | null;
}

export interface DevicePage {
  devices: DeviceRecord[];
  page: number;
  page_size: number;
  total: number;
}

export interface FieldError {
  field: string;
  code: string;
  message: string;
}

/** Facet selection; "any" leaves the facet unconstrained. */
export interface FilterSelection {
  combustion: string;
  burner: string;
  fuel: string;
}

export const ANY = "any";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: FieldError[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** What the form needs from the service; HeatsApi is the real implementation. */
export interface SizingServiceClient {
  getCities(): Promise<CityEntry[]>;
  getDestinations(): Promise<DestinationEntry[]>;
  getGnOptions(): Promise<GnGroup[]>;
  computeSizing(request: SizingRequest): Promise<SizingResponse>;
  queryDevices(requiredKw: number, filters: FilterSelection): Promise<DevicePage>;
}

export function deviceQuery(requiredKw: number, filters: FilterSelection): string {
  const params = new URLSearchParams();
  params.set("required_kw", String(requiredKw));
  if (filters.combustion !== ANY) params.set("combustion", filters.combustion);
  if (filters.burner !== ANY) params.set("burner", filters.burner);
  if (filters.fuel !== ANY) params.set("fuel", filters.fuel);
  return `?${params.toString()}`;
}

export class HeatsApi implements SizingServiceClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  getCities(): Promise<CityEntry[]> {
    return this.request<CityEntry[]>("/v1/cities");
  }

  getDestinations(): Promise<DestinationEntry[]> {
    return this.request<DestinationEntry[]>("/v1/destinations");
  }

  getGnOptions(): Promise<GnGroup[]> {
    return this.request<GnGroup[]>("/v1/gn-options");
  }

  computeSizing(request: SizingRequest): Promise<SizingResponse> {
    return this.request<SizingResponse>("/v1/sizing", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  queryDevices(requiredKw: number, filters: FilterSelection): Promise<DevicePage> {
    return this.request<DevicePage>(`/v1/devices${deviceQuery(requiredKw, filters)}`);
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const url = this.base + path;
    let response: Response;
    try {
      response = await this.fetchFn(url, init);
    } catch (cause) {
      throw new ApiError(0, "network_error", `cannot reach ${url}`);
    }
    const text = await response.text();
    let body: unknown = null;
    if (text) {
      try {
        body = JSON.parse(text);
      } catch {
        body = null;
      }
    }
    if (!response.ok) {
      const error = (body as { error?: { code?: string; message?: string; details?: FieldError[] } } | null)?.error;
      throw new ApiError(
        response.status,
        error?.code ?? "http_error",
        error?.message ?? `HTTP ${response.status} from ${url}`,
        error?.details ?? [],
      );
    }
    return body as T;
  }
}
