//! Where the E₁-page of the spectral sequence for (αS_ν, ωβS_λ) can be
//! nonzero, and pictures of it.

use std::collections::BTreeSet;
use std::fmt::Write;

/// Admissible bidegrees (p, q) for |ν| = n, |λ| = m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Support {
    pub nu_size: usize,
    pub lambda_size: usize,
    pub region: BTreeSet<(i64, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    Outside,
    /// Zero because Ext⁰ and Ext¹ are known.
    KnownZero,
    Open,
}

/// Region max(n, min(2, m)) ≤ p ≤ m, −p ≤ q ≤ −n.
pub fn e1_support(nu_size: usize, lambda_size: usize) -> E1Support {
    let (n, m) = (nu_size as i64, lambda_size as i64);
    let mut region = BTreeSet::new();
    if n <= m {
        for p in n.max(m.min(2))..=m {
            for q in -p..=-n {
                region.insert((p, q));
            }
        }
    }
    E1Support {
        nu_size,
        lambda_size,
        region,
    }
}

impl E1Support {
    pub fn is_empty(&self) -> bool {
        self.region.is_empty()
    }

    pub fn contains(&self, p: i64, q: i64) -> bool {
        self.region.contains(&(p, q))
    }

    /// Inside the region, total degree p + q ∈ {0, 1} is zero except on the
    /// top row, where E₁ holds Ext⁰(ν, ν) and Ext¹(ν, ρ) for |ρ| = n + 1.
    pub fn kind(&self, p: i64, q: i64) -> CellKind {
        if !self.contains(p, q) {
            return CellKind::Outside;
        }
        let top = q == -(self.nu_size as i64);
        if !top && (p + q == 0 || p + q == 1) {
            CellKind::KnownZero
        } else {
            CellKind::Open
        }
    }

    fn rows(&self) -> impl Iterator<Item = i64> {
        let (n, m) = (self.nu_size as i64, self.lambda_size as i64);
        (-m..=-n).rev()
    }

    /// Text grid: `#` possibly nonzero, `o` known zero, `.` outside. The
    /// rightmost column carries its Ext degree.
    pub fn render_ascii(&self) -> String {
        let (n, m) = (self.nu_size as i64, self.lambda_size as i64);
        let mut out = String::new();
        let _ = writeln!(out, "E1 page for |nu| = {}, |lambda| = {}", n, m);
        if self.is_empty() {
            out.push_str("(empty)\n");
            return out;
        }
        out.push_str("  q\\p");
        for p in 0..=m {
            let _ = write!(out, "{:>3}", p);
        }
        out.push('\n');
        for q in self.rows() {
            let _ = write!(out, "{:>5}", q);
            for p in 0..=m {
                let c = match self.kind(p, q) {
                    CellKind::Outside => '.',
                    CellKind::KnownZero => 'o',
                    CellKind::Open => '#',
                };
                let _ = write!(out, "{:>3}", c);
            }
            if self.contains(m, q) {
                let _ = write!(out, "   Ext^{}", m + q);
            }
            out.push('\n');
        }
        out.push_str("# possibly nonzero, o zero by Ext^0/Ext^1, . outside the support\n");
        out
    }

    pub fn render_svg(&self) -> String {
        const CELL: i64 = 40;
        const MARGIN: i64 = 50;
        let (n, m) = (self.nu_size as i64, self.lambda_size as i64);
        let rows = if n <= m { m - n + 1 } else { 1 };
        let width = MARGIN * 2 + (m + 1) * CELL + 70;
        let height = MARGIN * 2 + rows * CELL;
        let x = |p: i64| MARGIN + p * CELL + CELL / 2;
        let y = |q: i64| MARGIN + (-n - q) * CELL + CELL / 2;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            width, height, width, height
        );
        let _ = writeln!(s, r#"  <rect width="{}" height="{}" fill="white"/>"#, width, height);
        if !self.is_empty() {
            let p0 = n.max(m.min(2));
            // hull of the region: top edge at q = −n, diagonal edge q = −p
            let h = CELL / 2;
            let pts = [
                (x(p0) - h, y(-n) - h),
                (x(m) + h, y(-n) - h),
                (x(m) + h, y(-m) + h),
                (x(p0) - h, y(-p0) + h),
            ];
            let pts: Vec<String> = pts.iter().map(|(a, b)| format!("{},{}", a, b)).collect();
            let _ = writeln!(s, r##"  <polygon points="{}" fill="#d9d9d9"/>"##, pts.join(" "));
            for &(p, q) in &self.region {
                match self.kind(p, q) {
                    CellKind::KnownZero => {
                        let _ = writeln!(
                            s,
                            r#"  <circle cx="{}" cy="{}" r="8" fill="white" stroke="black"/>"#,
                            x(p),
                            y(q)
                        );
                    }
                    CellKind::Open => {
                        let _ = writeln!(
                            s,
                            r#"  <rect x="{}" y="{}" width="14" height="14" fill="black"/>"#,
                            x(p) - 7,
                            y(q) - 7
                        );
                    }
                    CellKind::Outside => {}
                }
            }
            for q in self.rows() {
                let _ = writeln!(
                    s,
                    r#"  <text x="{}" y="{}" font-size="12" font-family="serif">Ext^{}</text>"#,
                    x(m) + CELL / 2 + 6,
                    y(q) + 4,
                    m + q
                );
                let _ = writeln!(
                    s,
                    r#"  <text x="{}" y="{}" font-size="12" text-anchor="end" font-family="serif">{}</text>"#,
                    MARGIN - 8,
                    y(q) + 4,
                    q
                );
            }
        }
        for p in 0..=m {
            let _ = writeln!(
                s,
                r#"  <text x="{}" y="{}" font-size="12" text-anchor="middle" font-family="serif">{}</text>"#,
                x(p),
                MARGIN - 14,
                p
            );
        }
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="12" font-family="serif">p</text>"#,
            MARGIN + (m + 1) * CELL + 10,
            MARGIN - 14
        );
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="12" font-family="serif">q</text>"#,
            MARGIN - 30,
            MARGIN - 14
        );
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn figure_case() {
        let s = e1_support(3, 8);
        // triangle: 6 + 5 + ... + 1 cells
        assert_eq!(s.region.len(), 21);
        assert!(s.contains(3, -3) && s.contains(8, -8) && s.contains(8, -3));
        assert!(!s.contains(2, -3) && !s.contains(4, -5) && !s.contains(9, -3));
        assert_eq!(s.kind(3, -3), CellKind::Open);
        assert_eq!(s.kind(4, -3), CellKind::Open);
        assert_eq!(s.kind(5, -5), CellKind::KnownZero);
        assert_eq!(s.kind(5, -4), CellKind::KnownZero);
        assert_eq!(s.kind(6, -4), CellKind::Open);
        let art = s.render_ascii();
        assert!(art.contains("   -3  .  .  .  #  #  #  #  #  #   Ext^5"), "{}", art);
        assert!(art.contains("   -8  .  .  .  .  .  .  .  .  o   Ext^0"), "{}", art);
    }

    #[test]
    fn degenerate_cases() {
        assert!(e1_support(5, 3).is_empty());
        assert!(e1_support(5, 3).render_ascii().contains("(empty)"));
        let s = e1_support(4, 4);
        assert_eq!(s.region.iter().copied().collect::<Vec<_>>(), vec![(4, -4)]);
        // total degree 0 only
        assert_eq!(s.kind(4, -4), CellKind::Open);
        // p < 2 excluded once |λ| ≥ 2
        assert!(!e1_support(0, 3).contains(1, -1));
        assert!(e1_support(0, 1).contains(1, 0));
    }

    #[test]
    fn svg_is_well_formed() {
        let svg = e1_support(3, 8).render_svg();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 9);
        assert_eq!(svg.matches("<rect x=").count(), 12);
        assert!(svg.contains(">Ext^5<"));
    }

    proptest! {
        #[test]
        fn region_bounds(n in 0usize..9, m in 0usize..12) {
            let s = e1_support(n, m);
            for &(p, q) in &s.region {
                prop_assert!(p >= n as i64 && p <= m as i64);
                prop_assert!(q >= -p && q <= -(n as i64));
                prop_assert!(m < 2 || p >= 2);
                // total degree stays in the non-vanishing range
                prop_assert!(p + q >= 0 && p + q <= (m - n) as i64);
            }
        }
    }
}
