/// Floating-point operation count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlopCount(pub u128);

impl FlopCount {
    pub fn total(self) -> u128 {
        self.0
    }
}

/// `D1 (D2 (N_s^3 + 7N_s^2 + 8 N_a N_s - 2N_s - 2 + 2N_a^3 + 4N_a^2) + 2N_a^2 + N_a - 1)`
/// where `D1`, `D2` are the iteration counts of the CM and phase updates.
pub fn flops_max_sr_slnr(na: u64, ns: u64, d1: u64, d2: u64) -> FlopCount {
    let (na, ns, d1, d2) = (na as i128, ns as i128, d1 as i128, d2 as i128);
    let inner = ns.pow(3) + 7 * ns.pow(2) + 8 * na * ns - 2 * ns - 2 + 2 * na.pow(3) + 4 * na.pow(2);
    let total = d1 * (d2 * inner + 2 * na.pow(2) + na - 1);
    FlopCount(total.max(0) as u128)
}

/// `2N_s^2 + 2 N_a N_s - 2N_s + 4N_a + 2N_a^2 - 2`.
pub fn flops_mrt_nsp_pa(na: u64, ns: u64) -> FlopCount {
    let (na, ns) = (na as i128, ns as i128);
    let total = 2 * ns.pow(2) + 2 * na * ns - 2 * ns + 4 * na + 2 * na.pow(2) - 2;
    FlopCount(total.max(0) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mrt_reference_value() {
        // 2*10000 + 2*1600 - 200 + 64 + 512 - 2
        assert_eq!(flops_mrt_nsp_pa(16, 100).total(), 23_574);
        assert_eq!(flops_mrt_nsp_pa(1, 1).total(), 6);
    }

    #[test]
    fn max_sr_unit_arguments() {
        // inner = 1 + 7 + 8 - 2 - 2 + 2 + 4 = 18; outer = 18 + 2 + 1 - 1
        assert_eq!(flops_max_sr_slnr(1, 1, 1, 1).total(), 20);
        assert_eq!(flops_max_sr_slnr(1, 1, 2, 3).total(), 2 * (3 * 18 + 2));
    }

    #[test]
    fn growth_orders() {
        let ratio = |ns| flops_max_sr_slnr(16, ns, 1, 1).total() as f64 / flops_mrt_nsp_pa(16, ns).total() as f64;
        // cubic over quadratic: tenfold N_s gives roughly tenfold ratio
        let growth = ratio(1000) / ratio(100);
        assert!(growth > 5.0 && growth < 15.0, "{growth}");
        let cubic = flops_max_sr_slnr(16, 1000, 1, 1).total() as f64 / flops_max_sr_slnr(16, 100, 1, 1).total() as f64;
        assert!(cubic > 500.0 && cubic <= 1000.0, "{cubic}");
        let quad = flops_mrt_nsp_pa(16, 1000).total() as f64 / flops_mrt_nsp_pa(16, 100).total() as f64;
        assert!(quad > 50.0 && quad <= 100.0, "{quad}");
    }
}
