// Browser entry point: wires the board and what-if controllers to the DOM.

import { ApiClient, formatEuros } from './api.js'
import { AuctionBoard, BoardState } from './board.js'
import { chartSvg } from './chart.js'
import { REQUEST_ATTRIBUTES, WhatIfController, WhatIfState } from './whatif.js'

const api = new ApiClient('')

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id)
  if (!node) throw new Error(`missing #${id}`)
  return node as T
}

function renderBoard(state: BoardState): void {
  const banner = el<HTMLDivElement>('board-banner')
  banner.textContent = state.banner ?? ''
  banner.hidden = !state.banner
  const table = el<HTMLTableSectionElement>('bid-rows')
  const calendar = el<HTMLDivElement>('calendar')
  const objective = el<HTMLSpanElement>('objective')
  if (!state.view) {
    table.innerHTML = ''
    calendar.innerHTML = state.busy ? 'loading…' : '<p class="empty">no bids</p>'
    return
  }
  objective.textContent = state.view.objective ?? '—'
  table.innerHTML = state.view.rows
    .map((row) => {
      const badge =
        row.status === 'accepted'
          ? `<span class="badge accepted">accepted · ${row.checkIn}</span>`
          : row.status === 'rejected'
            ? '<span class="badge rejected">rejected</span>'
            : '<span class="badge pending">pending</span>'
      return (
        `<tr><td>${row.customerId}</td><td>${row.lines}</td>` +
        `<td>${row.window}</td><td>${row.nights}</td><td>${row.perNight}</td><td>${badge}</td></tr>`
      )
    })
    .join('')
  if (state.view.rows.length === 0) {
    table.innerHTML = '<tr><td colspan="6" class="empty">no bids</td></tr>'
  }
  calendar.innerHTML = state.view.calendar
    .map((row) => {
      const cells = row.committed
        .map((count, i) => {
          const full = row.capacity !== null && count >= row.capacity
          return `<td class="${full ? 'full' : ''}" title="${state.view?.dates[i] ?? ''}">${count}</td>`
        })
        .join('')
      const cap = row.capacity === null ? '∞' : String(row.capacity)
      return `<tr><th>${row.roomType} (${cap})</th>${cells}</tr>`
    })
    .join('')
}

function renderWhatIf(state: WhatIfState): void {
  const card = el<HTMLDivElement>('result-card')
  const rules = el<HTMLUListElement>('rule-list')
  const chart = el<HTMLDivElement>('chart')
  const banner = el<HTMLDivElement>('whatif-banner')
  banner.textContent = state.banner ?? ''
  banner.hidden = !state.banner
  if (state.conflict) {
    card.innerHTML =
      '<p class="conflict">conflicting rules</p>' +
      `<ul>${state.conflict.lower.map((r) => `<li>≥ ${r}</li>`).join('')}` +
      `${state.conflict.upper.map((r) => `<li>≤ ${r}</li>`).join('')}</ul>`
    return
  }
  if (!state.result) {
    card.innerHTML = '<p class="empty">enter a cost to estimate</p>'
    rules.innerHTML = ''
    chart.innerHTML = ''
    return
  }
  const r = state.result
  card.innerHTML =
    (state.recommendation === 'do-not-bid'
      ? '<p class="abstain">do not bid — expected profit is not positive</p>'
      : '') +
    `<dl><dt>offer price</dt><dd>${formatEuros(r.price_cents)}</dd>` +
    `<dt>expected profit</dt><dd>${formatEuros(Math.round(r.expected_profit_cents))}</dd>` +
    `<dt>acceptance probability</dt><dd>${(r.acceptance_probability * 100).toFixed(1)}%</dd>` +
    `<dt>amenities</dt><dd>${
      Object.entries(r.amenities)
        .map(([k, v]) => `${k}=${v}`)
        .join(', ') || 'hotel defaults'
    }</dd></dl>` +
    (r.used_fallback ? '<p class="note">from the global price history (no rule matched)</p>' : '')
  rules.innerHTML = r.applicable_rules.map((rule) => `<li>${rule}</li>`).join('')
  chart.innerHTML = chartSvg(state.curve)
  if (state.maximum) {
    el<HTMLSpanElement>('curve-max').textContent =
      `maximum at (${(state.maximum.price_cents / 100).toFixed(0)}, ` +
      `${(state.maximum.expected_profit_cents / 100).toFixed(0)})`
  }
}

function start(): void {
  const auctionId = Number(new URLSearchParams(location.search).get('auction') ?? '1')
  const profileId = new URLSearchParams(location.search).get('profile') ?? 'seaside'

  const board = new AuctionBoard(api, auctionId, renderBoard)
  el<HTMLButtonElement>('run').addEventListener('click', () => void board.runClearing())
  void board.load()

  const whatIf = new WhatIfController(api, { profileId, onChange: renderWhatIf })
  for (const attr of REQUEST_ATTRIBUTES) {
    const input = el<HTMLInputElement>(`control-${attr}`)
    input.addEventListener('input', () => {
      whatIf.setControl(attr, input.value === '' ? null : Number(input.value))
    })
  }
  const cost = el<HTMLInputElement>('control-cost')
  cost.addEventListener('input', () => {
    whatIf.setCost(cost.value === '' ? null : Math.round(Number(cost.value) * 100))
  })
}

document.addEventListener('DOMContentLoaded', start)
