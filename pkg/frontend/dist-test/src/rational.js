// Small denominators render as fractions; large ones as decimals, with the
// exact pair preserved for tooltips. The exact strings come straight from the
// service payload and are never re-derived.
export const FRACTION_DENOMINATOR_LIMIT = 10000;
export function exactText(value) {
    const [num, den] = value;
    return den === "1" ? num : `${num}/${den}`;
}
export function toNumber(value) {
    return Number(value[0]) / Number(value[1]);
}
export function formatRational(value) {
    const exact = exactText(value);
    const den = value[1];
    if (den.length <= String(FRACTION_DENOMINATOR_LIMIT).length - 1 || den === "1") {
        return { text: exact, exact, approximate: false };
    }
    if (Number(den) <= FRACTION_DENOMINATOR_LIMIT) {
        return { text: exact, exact, approximate: false };
    }
    return { text: toNumber(value).toFixed(6), exact, approximate: true };
}
