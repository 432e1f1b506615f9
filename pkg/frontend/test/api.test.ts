import { describe, expect, it } from 'vitest'

import { ApiClient, ApiError, formatEuros } from '../src/api.js'
import { fallbackEstimate, jsonResponse } from './fixtures.js'

describe('ApiClient', () => {
  it('hits the documented endpoint paths', async () => {
    const urls: string[] = []
    const api = new ApiClient('http://hotel', async (url) => {
      urls.push(url)
      return jsonResponse([])
    })
    await api.getAuction(1)
    await api.optimizeAuction(1)
    await api.profitCurve(1000)
    expect(urls).toEqual([
      'http://hotel/api/auctions/1',
      'http://hotel/api/optimize_auction/1',
      'http://hotel/api/reverse/profit_curve?cost=1000',
    ])
  })

  it('posts the estimate body as-is', async () => {
    let captured: unknown = null
    const api = new ApiClient('', async (_url, init) => {
      captured = JSON.parse(String(init?.body))
      return jsonResponse(fallbackEstimate())
    })
    await api.estimate({
      profile_id: 'seaside',
      cost_cents: 1000,
      request: { hotel_rating: 4, beds_requested: null },
    })
    expect(captured).toEqual({
      profile_id: 'seaside',
      cost_cents: 1000,
      request: { hotel_rating: 4, beds_requested: null },
    })
  })

  it('raises ApiError with the service error document', async () => {
    const api = new ApiClient('', async () =>
      jsonResponse({ error: 'not-found', message: 'no forward auction with id 9' }, 404),
    )
    await expect(api.getAuction(9)).rejects.toMatchObject({
      status: 404,
      doc: { error: 'not-found' },
    })
    await expect(api.getAuction(9)).rejects.toBeInstanceOf(ApiError)
  })
})

describe('formatEuros', () => {
  it('renders whole and fractional amounts', () => {
    expect(formatEuros(4000)).toBe('€40')
    expect(formatEuros(2712)).toBe('€27.12')
    expect(formatEuros(-150)).toBe('-€1.50')
  })
})
