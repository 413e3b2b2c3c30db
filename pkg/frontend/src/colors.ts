// Diverging color scale over [-1, 1]: red for assertive (positive), blue for
// courteous (negative), white at zero.

const ASSERTIVE = [214, 47, 39] as const;
const COURTEOUS = [33, 102, 172] as const;
const NEUTRAL = [247, 247, 247] as const;

function mix(from: readonly number[], to: readonly number[], t: number): string {
  const channel = (i: number) => Math.round(from[i]! + (to[i]! - from[i]!) * t);
  return `rgb(${channel(0)}, ${channel(1)}, ${channel(2)})`;
}

export function divergingColor(value: number): string {
  const clamped = Math.max(-1, Math.min(1, value));
  if (clamped === 0) return mix(NEUTRAL, NEUTRAL, 0);
  return clamped > 0 ? mix(NEUTRAL, ASSERTIVE, clamped) : mix(NEUTRAL, COURTEOUS, -clamped);
}

// readable text on top of the cell fill
export function textColor(value: number): string {
  return Math.abs(value) > 0.65 ? "#ffffff" : "#111111";
}
