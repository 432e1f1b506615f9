// Typed client for the roomauction HTTP API. All numbers stay in integer
// cents exactly as the service sends them; formatting happens at render time.

export interface MoneyDoc {
  cents: number
  currency: string
}

export interface BidLineDoc {
  room_type: string
  rooms_requested: number
  price_per_night: MoneyDoc
}

export interface BidDoc {
  customer_id: number
  lines: BidLineDoc[]
  window_lo: number
  window_hi: number
  nights: number
  blackout_days: number[]
}

export interface RoomTypeDoc {
  id: string
  auctioned_count: number | null
  min_price: MoneyDoc
  operating_cost: MoneyDoc
  real_group: string
}

export interface GroupDoc {
  id: string
  capacity: number
  member_room_types: string[]
}

export interface StoredResultDoc {
  status: string
  objective_mode: string
  objective: MoneyDoc
  best_bound: MoneyDoc
  nodes_explored: number
  wall_time: number
  accepted: { customer_id: number; arrival: number }[]
}

export interface AuctionReadResponse {
  id: number
  auction: {
    horizon: { start_date: string; length: number }
    room_types: RoomTypeDoc[]
    groups: GroupDoc[]
  }
  bids: BidDoc[]
  latest_result: StoredResultDoc | null
  dates: string[]
}

// The clearing endpoint's historical shape: literal key, unpadded dates.
export const ARRIVAL_KEY = 'arrival-date (YYYY-mm-dd)'

export interface ClearingEntry {
  bidid: number
  'arrival-date (YYYY-mm-dd)': string
}

export interface EstimateRequestBody {
  profile_id: string
  cost_cents: number
  request: Record<string, number | null>
}

export interface EstimateResponse {
  price_cents: number
  expected_profit_cents: number
  acceptance_probability: number
  abstain: boolean
  used_fallback: boolean
  amenities: Record<string, number>
  amenities_defaulted: boolean
  applicable_rules: string[]
}

export interface CurvePoint {
  price_cents: number
  expected_profit_cents: number
  acceptance_probability: number
}

export interface ErrorDoc {
  error: string
  message: string
  lower_rules?: string[]
  upper_rules?: string[]
  best_bound_cents?: number
  objective_cents?: number
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly doc: ErrorDoc,
  ) {
    super(doc.message || `HTTP ${status}`)
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let doc: ErrorDoc
    try {
      doc = (await response.json()) as ErrorDoc
    } catch {
      doc = { error: 'http', message: `HTTP ${response.status}` }
    }
    throw new ApiError(response.status, doc)
  }
  return (await response.json()) as T
}

export class ApiClient {
  constructor(
    private readonly base: string = '',
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  getAuction(id: number): Promise<AuctionReadResponse> {
    return this.fetchFn(`${this.base}/api/auctions/${id}`).then((r) =>
      asJson<AuctionReadResponse>(r),
    )
  }

  optimizeAuction(id: number): Promise<ClearingEntry[]> {
    return this.fetchFn(`${this.base}/api/optimize_auction/${id}`).then((r) =>
      asJson<ClearingEntry[]>(r),
    )
  }

  estimate(body: EstimateRequestBody): Promise<EstimateResponse> {
    return this.fetchFn(`${this.base}/api/reverse/estimate`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    }).then((r) => asJson<EstimateResponse>(r))
  }

  profitCurve(costCents: number): Promise<CurvePoint[]> {
    return this.fetchFn(`${this.base}/api/reverse/profit_curve?cost=${costCents}`).then(
      (r) => asJson<CurvePoint[]>(r),
    )
  }
}

export function formatEuros(cents: number): string {
  const sign = cents < 0 ? '-' : ''
  const abs = Math.abs(cents)
  const whole = Math.floor(abs / 100)
  const rest = Math.round(abs % 100)
  return rest === 0 ? `${sign}€${whole}` : `${sign}€${whole}.${String(rest).padStart(2, '0')}`
}
