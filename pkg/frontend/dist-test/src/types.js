// Wire types of the session service. Rationals are [numerator, denominator]
// string pairs and are displayed verbatim; the client never recomputes them.
export {};
