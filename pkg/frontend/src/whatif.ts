// What-if explorer: six request-attribute controls plus a cost input feed a
// debounced estimate request; the result card and profit curve always reflect
// the latest completed request (stale responses are discarded, latest wins).

import { ApiClient, ApiError, CurvePoint, EstimateResponse } from './api.js'

export const REQUEST_ATTRIBUTES = [
  'period_visiting',
  'hotel_rating',
  'distance_to_sea',
  'beds_requested',
  'breakfast_type',
  'sites_within_10km',
] as const

export type RequestAttribute = (typeof REQUEST_ATTRIBUTES)[number]

export interface ConflictInfo {
  lower: string[]
  upper: string[]
}

export interface WhatIfState {
  controls: Record<RequestAttribute, number | null>
  costCents: number | null
  result: EstimateResponse | null
  curve: CurvePoint[]
  maximum: CurvePoint | null
  recommendation: 'offer' | 'do-not-bid' | null
  conflict: ConflictInfo | null
  banner: string | null
  pending: boolean
}

export function emptyControls(): Record<RequestAttribute, number | null> {
  return {
    period_visiting: null,
    hotel_rating: null,
    distance_to_sea: null,
    beds_requested: null,
    breakfast_type: null,
    sites_within_10km: null,
  }
}

/** The marked maximum of a profit curve; ties go to the lower price. */
export function curveMaximum(curve: CurvePoint[]): CurvePoint | null {
  let best: CurvePoint | null = null
  for (const point of curve) {
    if (best === null || point.expected_profit_cents > best.expected_profit_cents) {
      best = point
    }
  }
  return best
}

export interface WhatIfOptions {
  profileId: string
  debounceMs?: number
  onChange?: (state: WhatIfState) => void
}

export class WhatIfController {
  state: WhatIfState = {
    controls: emptyControls(),
    costCents: null,
    result: null,
    curve: [],
    maximum: null,
    recommendation: null,
    conflict: null,
    banner: null,
    pending: false,
  }

  private readonly debounceMs: number
  private readonly onChange: (state: WhatIfState) => void
  private timer: ReturnType<typeof setTimeout> | null = null
  private sequence = 0

  constructor(
    private readonly api: ApiClient,
    private readonly options: WhatIfOptions,
  ) {
    this.debounceMs = options.debounceMs ?? 300
    this.onChange = options.onChange ?? (() => {})
  }

  private emit(): void {
    this.onChange(this.state)
  }

  setControl(attribute: RequestAttribute, value: number | null): void {
    this.state = {
      ...this.state,
      controls: { ...this.state.controls, [attribute]: value },
    }
    this.emit()
    this.schedule()
  }

  setCost(costCents: number | null): void {
    this.state = { ...this.state, costCents }
    this.emit()
    this.schedule()
  }

  private schedule(): void {
    if (this.state.costCents === null) {
      return // nothing to ask until a cost is entered
    }
    if (this.timer !== null) {
      clearTimeout(this.timer)
    }
    this.timer = setTimeout(() => {
      this.timer = null
      void this.fire()
    }, this.debounceMs)
  }

  private async fire(): Promise<void> {
    const cost = this.state.costCents
    if (cost === null) return
    const ticket = ++this.sequence
    this.state = { ...this.state, pending: true }
    this.emit()
    try {
      const [estimate, curve] = await Promise.all([
        this.api.estimate({
          profile_id: this.options.profileId,
          cost_cents: cost,
          request: { ...this.state.controls },
        }),
        this.api.profitCurve(cost),
      ])
      if (ticket !== this.sequence) {
        return // a newer request is in flight or already applied
      }
      this.state = {
        ...this.state,
        result: estimate,
        curve,
        maximum: curveMaximum(curve),
        recommendation: estimate.abstain ? 'do-not-bid' : 'offer',
        conflict: null,
        banner: null,
        pending: false,
      }
      this.emit()
    } catch (err) {
      if (ticket !== this.sequence) {
        return
      }
      if (err instanceof ApiError && err.status === 409) {
        this.state = {
          ...this.state,
          conflict: {
            lower: err.doc.lower_rules ?? [],
            upper: err.doc.upper_rules ?? [],
          },
          banner: err.doc.message,
          pending: false,
        }
      } else {
        this.state = {
          ...this.state,
          banner: err instanceof Error ? err.message : String(err),
          pending: false,
        }
      }
      this.emit()
    }
  }
}
