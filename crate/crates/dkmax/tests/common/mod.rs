//! Reference data shared by the integration suites.
#![allow(dead_code)] // each test binary uses its own subset

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// One reference jump group: (eps, members as (p, m), N~ at the jump).
pub type RefJump = (f64, Vec<(u64, u32)>, u64);

/// First 20 jump groups of the jump sets for k = 2..5.
pub fn reference_jumps(k: u32) -> Vec<RefJump> {
    match k {
        2 => vec![
            (1.0, vec![(2, 1)], 2),
            (0.6309, vec![(3, 1)], 6),
            (0.5850, vec![(2, 2)], 12),
            (0.4307, vec![(5, 1)], 60),
            (0.4150, vec![(2, 3)], 120),
            (0.3691, vec![(3, 2)], 360),
            (0.3562, vec![(7, 1)], 2520),
            (0.3219, vec![(2, 4)], 5040),
            (0.2891, vec![(11, 1)], 55440),
            (0.2702, vec![(13, 1)], 720_720),
            (0.2630, vec![(2, 5)], 1_441_440),
            (0.2619, vec![(3, 3)], 4_324_320),
            (0.2519, vec![(5, 2)], 21_621_600),
            (0.2447, vec![(17, 1)], 367_567_200),
            (0.2354, vec![(19, 1)], 6_983_776_800),
            (0.2224, vec![(2, 6)], 13_967_553_600),
            (0.2211, vec![(23, 1)], 321_253_732_800),
            (0.2084, vec![(7, 2)], 2_248_776_129_600),
            (0.2058, vec![(29, 1)], 65_214_507_758_400),
            (0.2031, vec![(3, 4)], 195_643_523_275_200),
        ],
        3 => vec![
            (1.5850, vec![(2, 1)], 2),
            (1.0, vec![(2, 2), (3, 1)], 12),
            (0.7370, vec![(2, 3)], 24),
            (0.6826, vec![(5, 1)], 120),
            (0.6309, vec![(3, 2)], 360),
            (0.5850, vec![(2, 4)], 720),
            (0.5646, vec![(7, 1)], 5040),
            (0.4854, vec![(2, 5)], 10080),
            (0.4650, vec![(3, 3)], 30240),
            (0.4582, vec![(11, 1)], 332_640),
            (0.4307, vec![(5, 2)], 1_663_200),
            (0.4283, vec![(13, 1)], 21_621_600),
            (0.4150, vec![(2, 6)], 43_243_200),
            (0.3878, vec![(17, 1)], 735_134_400),
            (0.3731, vec![(19, 1)], 13_967_553_600),
            (0.3691, vec![(3, 4)], 41_902_660_800),
            (0.3626, vec![(2, 7)], 83_805_321_600),
            (0.3562, vec![(7, 2)], 586_637_251_200),
            (0.3504, vec![(23, 1)], 13_492_656_777_600),
            (0.3263, vec![(29, 1)], 391_287_046_550_400),
        ],
        4 => vec![
            (2.0, vec![(2, 1)], 2),
            (1.3219, vec![(2, 2)], 4),
            (1.2619, vec![(3, 1)], 12),
            (1.0, vec![(2, 3)], 24),
            (0.8614, vec![(5, 1)], 120),
            (0.8340, vec![(3, 2)], 360),
            (0.8074, vec![(2, 4)], 720),
            (0.7124, vec![(7, 1)], 5040),
            (0.6781, vec![(2, 5)], 10080),
            (0.6309, vec![(3, 3)], 30240),
            (0.5850, vec![(2, 6)], 60480),
            (0.5781, vec![(11, 1)], 665_280),
            (0.5693, vec![(5, 2)], 3_326_400),
            (0.5405, vec![(13, 1)], 43_243_200),
            (0.5146, vec![(2, 7)], 86_486_400),
            (0.5094, vec![(3, 4)], 259_459_200),
            (0.4893, vec![(17, 1)], 4_410_806_400),
            (0.4709, vec![(7, 2)], 30_875_644_800),
            (0.4708, vec![(19, 1)], 586_637_251_200),
            (0.4594, vec![(2, 8)], 1_173_274_502_400),
        ],
        5 => vec![
            (2.3219, vec![(2, 1)], 2),
            (1.5850, vec![(2, 2)], 4),
            (1.4650, vec![(3, 1)], 12),
            (1.2224, vec![(2, 3)], 24),
            (1.0, vec![(2, 4), (3, 2), (5, 1)], 720),
            (0.8480, vec![(2, 5)], 1440),
            (0.8271, vec![(7, 1)], 10080),
            (0.7712, vec![(3, 3)], 30240),
            (0.7370, vec![(2, 6)], 60480),
            (0.6826, vec![(5, 2)], 302_400),
            (0.6712, vec![(11, 1)], 3_326_400),
            (0.6521, vec![(2, 7)], 6_652_800),
            (0.6309, vec![(3, 4)], 19_958_400),
            (0.6275, vec![(13, 1)], 259_459_200),
            (0.5850, vec![(2, 8)], 518_918_400),
            (0.5681, vec![(17, 1)], 8_821_612_800),
            (0.5646, vec![(7, 2)], 61_751_289_600),
            (0.5466, vec![(19, 1)], 1_173_274_502_400),
            (0.5350, vec![(3, 5)], 3_519_823_507_200),
            (0.5305, vec![(2, 9)], 7_039_647_014_400),
        ],
        _ => panic!("no reference data for k = {k}"),
    }
}

/// 200 seeded (k, eps) pairs with k <= 200 and k^(1/eps) inside a 2e6 sieve.
pub fn sample_pairs() -> Vec<(u32, f64)> {
    let mut rng = StdRng::seed_from_u64(0x5eed_d40a);
    let mut pairs = Vec::with_capacity(200);
    while pairs.len() < 200 {
        let k: u32 = rng.gen_range(2..=200);
        let lo = ((k as f64).ln() / 12.0).max(0.18);
        let hi = (k as f64).log2() * 1.05;
        if lo >= hi {
            continue;
        }
        pairs.push((k, rng.gen_range(lo..hi)));
    }
    pairs
}

/// The N_max partition over 2 <= k <= 2000: (k_lo, k_hi, factorization).
pub const NMAX_PARTITION: &[(u32, u32, &str)] = &[
    (2, 2, "2^5*3^3*5^2*7*11*13*17*19"),
    (3, 3, "2^6*3^3*5^2*7*11*13"),
    (4, 5, "2^7*3^4*5^2*7*11*13"),
    (6, 7, "2^8*3^4*5^2*7*11*13"),
    (8, 9, "2^9*3^4*5^2*7*11"),
    (10, 12, "2^10*3^5*5^2*7*11"),
    (13, 13, "2^11*3^5*5^2*7*11"),
    (14, 16, "2^11*3^5*5^2*7"),
    (17, 20, "2^12*3^5*5^2*7"),
    (21, 23, "2^13*3^6*5^2*7"),
    (24, 28, "2^14*3^6*5^2*7"),
    (29, 33, "2^15*3^6*5^2*7"),
    (34, 36, "2^16*3^6*5^2*7"),
    (37, 42, "2^17*3^7*5^2*7"),
    (43, 48, "2^18*3^7*5^2*7"),
    (49, 54, "2^19*3^7*5^2*7"),
    (55, 58, "2^20*3^7*5^2*7"),
    (59, 65, "2^21*3^8*5^2*7"),
    (66, 72, "2^22*3^8*5^2*7"),
    (73, 80, "2^23*3^8*5^2*7"),
    (81, 88, "2^24*3^8*5^2*7"),
    (89, 89, "2^25*3^8*5^2*7"),
    (90, 94, "2^25*3^9*5^2*7"),
    (95, 102, "2^26*3^9*5^2*7"),
    (103, 111, "2^27*3^9*5^2*7"),
    (112, 121, "2^28*3^9*5^2*7"),
    (122, 131, "2^29*3^9*5^2*7"),
    (132, 137, "2^30*3^9*5^2*7"),
    (138, 147, "2^31*3^10*5^2*7"),
    (148, 158, "2^32*3^10*5^2*7"),
    (159, 170, "2^33*3^10*5^2*7"),
    (171, 181, "2^34*3^10*5^2*7"),
    (182, 194, "2^35*3^10*5^2*7"),
    (195, 199, "2^36*3^10*5^2*7"),
    (200, 200, "2^36*3^11*5^2*7"),
    (201, 213, "2^37*3^11*5^2*7"),
    (214, 226, "2^38*3^11*5^2*7"),
    (227, 239, "2^39*3^11*5^2*7"),
    (240, 253, "2^39*3^11*5^2"),
    (254, 268, "2^40*3^11*5^2"),
    (269, 284, "2^41*3^11*5^2"),
    (285, 299, "2^42*3^11*5^2"),
    (300, 316, "2^43*3^11*5^2"),
    (317, 333, "2^44*3^11*5^2"),
    (334, 343, "2^45*3^11*5^2"),
    (344, 357, "2^46*3^12*5^2"),
    (358, 375, "2^47*3^12*5^2"),
    (376, 393, "2^48*3^12*5^2"),
    (394, 412, "2^49*3^12*5^2"),
    (413, 431, "2^50*3^12*5^2"),
    (432, 451, "2^51*3^12*5^2"),
    (452, 471, "2^52*3^12*5^2"),
    (472, 486, "2^53*3^12*5^2"),
    (487, 499, "2^54*3^13*5^2"),
    (500, 520, "2^55*3^13*5^2"),
    (521, 542, "2^56*3^13*5^2"),
    (543, 564, "2^57*3^13*5^2"),
    (565, 587, "2^58*3^13*5^2"),
    (588, 610, "2^59*3^13*5^2"),
    (611, 633, "2^60*3^13*5^2"),
    (634, 657, "2^61*3^13*5^2"),
    (658, 679, "2^62*3^13*5^2"),
    (680, 688, "2^63*3^14*5^2"),
    (689, 713, "2^64*3^14*5^2"),
    (714, 739, "2^65*3^14*5^2"),
    (740, 765, "2^66*3^14*5^2"),
    (766, 791, "2^67*3^14*5^2"),
    (792, 818, "2^68*3^14*5^2"),
    (819, 845, "2^69*3^14*5^2"),
    (846, 873, "2^70*3^14*5^2"),
    (874, 902, "2^71*3^14*5^2"),
    (903, 930, "2^72*3^14*5^2"),
    (931, 943, "2^73*3^14*5^2"),
    (944, 965, "2^74*3^15*5^2"),
    (966, 995, "2^75*3^15*5^2"),
    (996, 1025, "2^76*3^15*5^2"),
    (1026, 1056, "2^77*3^15*5^2"),
    (1057, 1087, "2^78*3^15*5^2"),
    (1088, 1119, "2^79*3^15*5^2"),
    (1120, 1151, "2^80*3^15*5^2"),
    (1152, 1184, "2^81*3^15*5^2"),
    (1185, 1217, "2^82*3^15*5^2"),
    (1218, 1251, "2^83*3^15*5^2"),
    (1252, 1264, "2^84*3^15*5^2"),
    (1265, 1296, "2^83*3^15*5"),
    (1297, 1332, "2^84*3^15*5"),
    (1333, 1368, "2^85*3^15*5"),
    (1369, 1404, "2^86*3^15*5"),
    (1405, 1441, "2^87*3^15*5"),
    (1442, 1479, "2^88*3^15*5"),
    (1480, 1493, "2^89*3^15*5"),
    (1494, 1518, "2^90*3^16*5"),
    (1519, 1556, "2^91*3^16*5"),
    (1557, 1595, "2^92*3^16*5"),
    (1596, 1634, "2^93*3^16*5"),
    (1635, 1674, "2^94*3^16*5"),
    (1675, 1714, "2^95*3^16*5"),
    (1715, 1755, "2^96*3^16*5"),
    (1756, 1797, "2^97*3^16*5"),
    (1798, 1838, "2^98*3^16*5"),
    (1839, 1881, "2^99*3^16*5"),
    (1882, 1924, "2^100*3^16*5"),
    (1925, 1967, "2^101*3^16*5"),
    (1968, 2000, "2^102*3^16*5"),
];
