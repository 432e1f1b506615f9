// SVG geometry for the expected-profit curve. Pure scaling of service data
// into pixel space; the maximum point is highlighted with a marker.

import { CurvePoint } from './api.js'
import { curveMaximum } from './whatif.js'

export interface ChartGeometry {
  width: number
  height: number
  pad: number
}

export interface ChartModel {
  path: string
  marker: { x: number; y: number; point: CurvePoint } | null
  xLabels: { x: number; text: string }[]
  yLabels: { y: number; text: string }[]
}

const DEFAULT_GEOMETRY: ChartGeometry = { width: 420, height: 220, pad: 36 }

export function buildChart(
  curve: CurvePoint[],
  geometry: ChartGeometry = DEFAULT_GEOMETRY,
): ChartModel {
  if (curve.length === 0) {
    return { path: '', marker: null, xLabels: [], yLabels: [] }
  }
  const { width, height, pad } = geometry
  const xs = curve.map((p) => p.price_cents)
  const ys = curve.map((p) => p.expected_profit_cents)
  const xMin = Math.min(...xs)
  const xMax = Math.max(...xs)
  const yMin = Math.min(0, ...ys)
  const yMax = Math.max(...ys)
  const xSpan = xMax - xMin || 1
  const ySpan = yMax - yMin || 1
  const toX = (price: number) => pad + ((price - xMin) / xSpan) * (width - 2 * pad)
  const toY = (profit: number) => height - pad - ((profit - yMin) / ySpan) * (height - 2 * pad)

  const path = curve
    .map((p, i) => `${i === 0 ? 'M' : 'L'}${toX(p.price_cents).toFixed(1)},${toY(p.expected_profit_cents).toFixed(1)}`)
    .join(' ')

  const max = curveMaximum(curve)
  const marker = max
    ? { x: toX(max.price_cents), y: toY(max.expected_profit_cents), point: max }
    : null

  const xLabels = [xMin, xMax].map((price) => ({
    x: toX(price),
    text: (price / 100).toFixed(0),
  }))
  const yLabels = [yMin, yMax].map((profit) => ({
    y: toY(profit),
    text: (profit / 100).toFixed(0),
  }))
  return { path, marker, xLabels, yLabels }
}

export function chartSvg(curve: CurvePoint[], geometry: ChartGeometry = DEFAULT_GEOMETRY): string {
  const model = buildChart(curve, geometry)
  const { width, height, pad } = geometry
  const axis = `M${pad},${pad} L${pad},${height - pad} L${width - pad},${height - pad}`
  const marker = model.marker
    ? `<circle cx="${model.marker.x.toFixed(1)}" cy="${model.marker.y.toFixed(1)}" r="4" class="max-marker"/>` +
      `<text x="${model.marker.x.toFixed(1)}" y="${(model.marker.y - 8).toFixed(1)}" class="max-label">` +
      `(${(model.marker.point.price_cents / 100).toFixed(0)}, ${(model.marker.point.expected_profit_cents / 100).toFixed(0)})</text>`
    : ''
  const labels = model.xLabels
    .map((l) => `<text x="${l.x.toFixed(1)}" y="${height - pad + 14}" class="tick">${l.text}</text>`)
    .concat(model.yLabels.map((l) => `<text x="4" y="${l.y.toFixed(1)}" class="tick">${l.text}</text>`))
    .join('')
  return (
    `<svg viewBox="0 0 ${width} ${height}" role="img" aria-label="expected profit curve">` +
    `<path d="${axis}" class="axis" fill="none"/>` +
    `<path d="${model.path}" class="curve" fill="none"/>` +
    marker +
    labels +
    `</svg>`
  )
}
