// Auction board view model: bid table, accepted/rejected badges, and the
// per-room-type occupancy calendar, rebuilt from service data on every
// clearing run. The board re-validates capacities client-side and refuses to
// display a solution whose calendar would overflow a room type or real group.

import {
  ApiClient,
  ApiError,
  ARRIVAL_KEY,
  AuctionReadResponse,
  ClearingEntry,
  formatEuros,
  StoredResultDoc,
} from './api.js'

export type BidStatus = 'accepted' | 'rejected' | 'pending'

export interface BidRow {
  customerId: number
  lines: string
  window: string
  nights: number
  perNight: string
  status: BidStatus
  checkIn: string | null
}

export interface CalendarRow {
  roomType: string
  capacity: number | null
  committed: number[] // one entry per horizon day
}

export interface AuctionBoardView {
  auctionId: number
  dates: string[]
  rows: BidRow[]
  calendar: CalendarRow[]
  objective: string | null
  violations: string[]
}

export interface BoardState {
  view: AuctionBoardView | null
  banner: string | null
  busy: boolean
}

/** Map an unpadded clearing date ("2023-6-2") to its 1-based horizon index. */
export function arrivalIndex(dates: string[], unpadded: string): number {
  const parts = unpadded.split('-').map((p) => Number(p))
  if (parts.length !== 3 || parts.some((p) => !Number.isInteger(p))) {
    return -1
  }
  const [y, m, d] = parts as [number, number, number]
  const iso = `${y}-${String(m).padStart(2, '0')}-${String(d).padStart(2, '0')}`
  return dates.indexOf(iso) + 1
}

export function arrivalsFromClearing(
  dates: string[],
  entries: ClearingEntry[],
): Map<number, number> {
  const out = new Map<number, number>()
  for (const entry of entries) {
    out.set(entry.bidid, arrivalIndex(dates, entry[ARRIVAL_KEY]))
  }
  return out
}

export function arrivalsFromStoredResult(result: StoredResultDoc): Map<number, number> {
  return new Map(result.accepted.map((e) => [e.customer_id, e.arrival]))
}

export function buildBoard(
  data: AuctionReadResponse,
  arrivals: Map<number, number> | null,
): AuctionBoardView {
  const days = data.auction.horizon.length
  const committed = new Map<string, number[]>()
  for (const rt of data.auction.room_types) {
    committed.set(rt.id, new Array<number>(days).fill(0))
  }
  const violations: string[] = []

  const rows: BidRow[] = data.bids.map((bid) => {
    const perNightCents = bid.lines.reduce(
      (sum, line) => sum + line.rooms_requested * line.price_per_night.cents,
      0,
    )
    const arrival = arrivals?.get(bid.customer_id)
    let status: BidStatus = arrivals === null ? 'pending' : 'rejected'
    let checkIn: string | null = null
    if (arrival !== undefined) {
      if (arrival < 1 || arrival + bid.nights - 1 > days) {
        violations.push(`bid ${bid.customer_id}: arrival ${arrival} outside the horizon`)
      } else {
        status = 'accepted'
        checkIn = data.dates[arrival - 1] ?? null
        for (const line of bid.lines) {
          const cells = committed.get(line.room_type)
          if (!cells) {
            violations.push(`bid ${bid.customer_id}: unknown room type ${line.room_type}`)
            continue
          }
          for (let d = arrival; d < arrival + bid.nights; d++) {
            cells[d - 1] = (cells[d - 1] ?? 0) + line.rooms_requested
          }
        }
      }
    }
    return {
      customerId: bid.customer_id,
      lines: bid.lines
        .map((l) => `${l.rooms_requested}× ${l.room_type} @ ${formatEuros(l.price_per_night.cents)}`)
        .join(', '),
      window: `${data.dates[bid.window_lo - 1] ?? bid.window_lo} … ${
        data.dates[bid.window_hi - 1] ?? bid.window_hi
      }`,
      nights: bid.nights,
      perNight: formatEuros(perNightCents),
      status,
      checkIn,
    }
  })

  const calendar: CalendarRow[] = data.auction.room_types.map((rt) => ({
    roomType: rt.id,
    capacity: rt.auctioned_count,
    committed: committed.get(rt.id) ?? new Array<number>(days).fill(0),
  }))

  for (const row of calendar) {
    if (row.capacity === null) continue
    row.committed.forEach((count, i) => {
      if (count > (row.capacity as number)) {
        violations.push(
          `room type ${row.roomType}, ${data.dates[i]}: ${count} rooms exceed cap ${row.capacity}`,
        )
      }
    })
  }
  for (const group of data.auction.groups) {
    for (let i = 0; i < days; i++) {
      let total = 0
      for (const member of group.member_room_types) {
        total += committed.get(member)?.[i] ?? 0
      }
      if (total > group.capacity) {
        violations.push(
          `group ${group.id}, ${data.dates[i]}: ${total} rooms exceed cap ${group.capacity}`,
        )
      }
    }
  }

  return {
    auctionId: data.id,
    dates: data.dates,
    rows,
    calendar,
    objective: data.latest_result ? formatEuros(data.latest_result.objective.cents) : null,
    violations,
  }
}

export class AuctionBoard {
  state: BoardState = { view: null, banner: null, busy: false }
  private data: AuctionReadResponse | null = null

  constructor(
    private readonly api: ApiClient,
    private readonly auctionId: number,
    private readonly onChange: (state: BoardState) => void = () => {},
  ) {}

  private emit(): void {
    this.onChange(this.state)
  }

  async load(): Promise<void> {
    this.state = { ...this.state, busy: true }
    this.emit()
    try {
      this.data = await this.api.getAuction(this.auctionId)
      const arrivals = this.data.latest_result
        ? arrivalsFromStoredResult(this.data.latest_result)
        : null
      this.apply(buildBoard(this.data, arrivals), null)
    } catch (err) {
      this.state = { ...this.state, busy: false, banner: describeError(err) }
      this.emit()
    }
  }

  /** Run the clearing and re-render badges and calendar from the response. */
  async runClearing(): Promise<void> {
    if (!this.data) {
      await this.load()
      if (!this.data) return
    }
    this.state = { ...this.state, busy: true }
    this.emit()
    try {
      const entries = await this.api.optimizeAuction(this.auctionId)
      const arrivals = arrivalsFromClearing(this.data.dates, entries)
      this.apply(buildBoard(this.data, arrivals), null)
    } catch (err) {
      // non-blocking banner; previous view retained
      this.state = { ...this.state, busy: false, banner: describeError(err) }
      this.emit()
    }
  }

  private apply(view: AuctionBoardView, banner: string | null): void {
    if (view.violations.length > 0) {
      // never display a solution that violates the shown capacities
      this.state = {
        view: this.state.view,
        banner: `refusing to display an invalid solution: ${view.violations[0]}`,
        busy: false,
      }
    } else {
      this.state = { view, banner, busy: false }
    }
    this.emit()
  }
}

export function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    const bound = err.doc.best_bound_cents
    const suffix = bound !== undefined ? ` (best bound ${formatEuros(bound)})` : ''
    return `${err.doc.error}: ${err.doc.message}${suffix}`
  }
  return err instanceof Error ? err.message : String(err)
}
