use bitflags::bitflags;

bitflags! {
    /// Per-time diagnostics attached to an inverted value.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
    pub struct Flags: u32 {
        /// At least one image sample used for this time was not finite.
        const NON_FINITE_SAMPLE = 1 << 0;
        /// Talbot: the contour integrand has not decayed at the left tail,
        /// or an image sample overflowed there.
        const CONTOUR_OVERFLOW = 1 << 1;
        /// Requested time precedes the image's declared onset delay.
        const UNDEFINED_BEFORE_DELAY = 1 << 2;
        /// de Hoog: the quotient-difference table broke down; direct
        /// summation was used instead.
        const QD_BREAKDOWN = 1 << 3;
        /// Schapery: the node matrix is numerically singular.
        const ILL_CONDITIONED = 1 << 4;
        /// Weeks: the exponential prefactor or the Laguerre sum overflowed.
        const PREFACTOR_OVERFLOW = 1 << 5;
        /// Harness: error against the reference exceeds the tolerance.
        const INACCURATE = 1 << 6;
    }
}

const NAMES: [(Flags, &str); 7] = [
    (Flags::NON_FINITE_SAMPLE, "non-finite-sample"),
    (Flags::CONTOUR_OVERFLOW, "contour-overflow"),
    (Flags::UNDEFINED_BEFORE_DELAY, "undefined-before-delay"),
    (Flags::QD_BREAKDOWN, "qd-breakdown"),
    (Flags::ILL_CONDITIONED, "ill-conditioned"),
    (Flags::PREFACTOR_OVERFLOW, "prefactor-overflow"),
    (Flags::INACCURATE, "inaccurate"),
];

impl Flags {
    /// `ok`, or the set flag names joined by `|`.
    pub fn label(self) -> String {
        if self.is_empty() {
            return "ok".to_string();
        }
        NAMES.iter().filter(|(f, _)| self.contains(*f)).map(|(_, n)| *n).collect::<Vec<_>>().join("|")
    }

    /// Whether the value should be treated as a failure.
    pub fn is_failure(self) -> bool {
        self.intersects(
            Flags::NON_FINITE_SAMPLE
                | Flags::CONTOUR_OVERFLOW
                | Flags::UNDEFINED_BEFORE_DELAY
                | Flags::PREFACTOR_OVERFLOW,
        )
    }
}
