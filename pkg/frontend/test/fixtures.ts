// Frozen service responses: the three-bid clearing scenario as served by
// GET /api/auctions/1, its golden clearing response, and the profit curve for
// the ten-auction price history at cost €10.

import { AuctionReadResponse, ClearingEntry, CurvePoint, EstimateResponse } from '../src/api.js'

const eur = (cents: number) => ({ cents, currency: 'EUR' })

export function showcaseAuction(): AuctionReadResponse {
  return {
    id: 1,
    auction: {
      horizon: { start_date: '2023-06-01', length: 15 },
      room_types: [
        {
          id: 'double',
          auctioned_count: 5,
          min_price: eur(6500),
          operating_cost: eur(0),
          real_group: 'double',
        },
      ],
      groups: [{ id: 'double', capacity: 5, member_room_types: ['double'] }],
    },
    bids: [
      {
        customer_id: 1,
        lines: [{ room_type: 'double', rooms_requested: 1, price_per_night: eur(7000) }],
        window_lo: 2,
        window_hi: 8,
        nights: 3,
        blackout_days: [],
      },
      {
        customer_id: 2,
        lines: [{ room_type: 'double', rooms_requested: 2, price_per_night: eur(6500) }],
        window_lo: 2,
        window_hi: 5,
        nights: 2,
        blackout_days: [],
      },
      {
        customer_id: 3,
        lines: [{ room_type: 'double', rooms_requested: 1, price_per_night: eur(8000) }],
        window_lo: 11,
        window_hi: 15,
        nights: 4,
        blackout_days: [],
      },
    ],
    latest_result: null,
    dates: [
      '2023-06-01',
      '2023-06-02',
      '2023-06-03',
      '2023-06-04',
      '2023-06-05',
      '2023-06-06',
      '2023-06-07',
      '2023-06-08',
      '2023-06-09',
      '2023-06-10',
      '2023-06-11',
      '2023-06-12',
      '2023-06-13',
      '2023-06-14',
      '2023-06-15',
    ],
  }
}

export function goldenClearing(): ClearingEntry[] {
  return [
    { bidid: 1, 'arrival-date (YYYY-mm-dd)': '2023-6-2' },
    { bidid: 2, 'arrival-date (YYYY-mm-dd)': '2023-6-2' },
    { bidid: 3, 'arrival-date (YYYY-mm-dd)': '2023-6-11' },
  ]
}

// GET /api/reverse/profit_curve?cost=1000 over the ten-auction history.
export function historyCurve(): CurvePoint[] {
  return [
    { price_cents: 3000, expected_profit_cents: 2000.0, acceptance_probability: 1.0 },
    { price_cents: 3500, expected_profit_cents: 2250.0, acceptance_probability: 0.9 },
    { price_cents: 4000, expected_profit_cents: 2700.0, acceptance_probability: 0.9 },
    { price_cents: 4250, expected_profit_cents: 1950.0, acceptance_probability: 0.6 },
    { price_cents: 4500, expected_profit_cents: 2100.0, acceptance_probability: 0.6 },
    { price_cents: 4650, expected_profit_cents: 1460.0, acceptance_probability: 0.4 },
    { price_cents: 4800, expected_profit_cents: 1520.0, acceptance_probability: 0.4 },
    { price_cents: 4900, expected_profit_cents: 1170.0, acceptance_probability: 0.3 },
    { price_cents: 5000, expected_profit_cents: 1200.0, acceptance_probability: 0.3 },
  ]
}

export function fallbackEstimate(): EstimateResponse {
  return {
    price_cents: 4000,
    expected_profit_cents: 2700.0,
    acceptance_probability: 0.9,
    abstain: false,
    used_fallback: true,
    amenities: {},
    amenities_defaulted: true,
    applicable_rules: [],
  }
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  })
}
