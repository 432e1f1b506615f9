import { describe, expect, it } from 'vitest'

import { buildChart, chartSvg } from '../src/chart.js'
import { historyCurve } from './fixtures.js'

describe('buildChart', () => {
  it('scales all points into the drawing area', () => {
    const geometry = { width: 400, height: 200, pad: 30 }
    const model = buildChart(historyCurve(), geometry)
    expect(model.path.startsWith('M')).toBe(true)
    expect(model.path.split(' ').length).toBe(historyCurve().length)
    for (const match of model.path.matchAll(/[ML](\d+\.?\d*),(\d+\.?\d*)/g)) {
      const x = Number(match[1])
      const y = Number(match[2])
      expect(x).toBeGreaterThanOrEqual(geometry.pad)
      expect(x).toBeLessThanOrEqual(geometry.width - geometry.pad)
      expect(y).toBeGreaterThanOrEqual(geometry.pad)
      expect(y).toBeLessThanOrEqual(geometry.height - geometry.pad)
    }
  })

  it('places the marker on the maximum point', () => {
    const model = buildChart(historyCurve())
    expect(model.marker?.point.price_cents).toBe(4000)
    expect(model.marker?.point.expected_profit_cents).toBe(2700)
    // the maximum has the smallest y (SVG y axis points down)
    const ys = [...model.path.matchAll(/[ML][\d.]+,([\d.]+)/g)].map((m) => Number(m[1]))
    expect(Math.min(...ys)).toBeCloseTo(model.marker!.y, 1)
  })

  it('handles the empty curve', () => {
    const model = buildChart([])
    expect(model.path).toBe('')
    expect(model.marker).toBeNull()
  })
})

describe('chartSvg', () => {
  it('emits a labelled svg with the maximum annotated in euros', () => {
    const svg = chartSvg(historyCurve())
    expect(svg).toContain('<svg')
    expect(svg).toContain('class="curve"')
    expect(svg).toContain('class="max-marker"')
    expect(svg).toContain('(40, 27)')
  })
})
