//! Bessel functions J₀ and J₁ of real argument, and their positive zeros.
//!
//! J₀ uses the Cephes rational approximations; J₁ follows FreeBSD msun
//! `e_j1.c`:
//!
//! ====================================================
//! Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.
//!
//! Developed at SunSoft, a Sun Microsystems, Inc. business.
//! Permission to use, copy, modify, and distribute this
//! software is freely granted, provided that this notice
//! is preserved.
//! ====================================================

use std::f64::consts::{FRAC_PI_4, PI};

const SQRT_FRAC_2_PI: f64 = 0.797_884_560_802_865_4;
const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselOrder {
    Zero,
    One,
}

impl BesselOrder {
    pub fn nu(self) -> f64 {
        match self {
            BesselOrder::Zero => 0.0,
            BesselOrder::One => 1.0,
        }
    }
}

/// J₀ or J₁ at `x`.
pub fn bessel_j(order: BesselOrder, x: f64) -> f64 {
    match order {
        BesselOrder::Zero => bessel_j0(x),
        BesselOrder::One => bessel_j1(x),
    }
}

fn polevl(x: f64, coef: &[f64]) -> f64 {
    coef.iter().fold(0.0, |acc, &c| acc * x + c)
}

fn p1evl(x: f64, coef: &[f64]) -> f64 {
    coef.iter().fold(1.0, |acc, &c| acc * x + c)
}

// squares of the first two zeros of J₀
const DR1: f64 = 5.783_185_962_946_784;
const DR2: f64 = 30.471_262_343_662_087;

const RP: [f64; 4] = [
    -4.794_432_209_782_018e9,
    1.956_174_919_465_565_7e12,
    -2.492_483_443_609_677_2e14,
    9.708_622_510_473_064e15,
];
const RQ: [f64; 8] = [
    4.995_631_471_526_51e2,
    1.737_854_016_763_747e5,
    4.844_096_583_399_621e7,
    1.118_555_370_453_568_3e10,
    2.112_775_201_154_892e12,
    3.105_182_298_574_225_6e14,
    3.181_219_559_432_049_6e16,
    1.710_862_940_810_431_5e18,
];
const PP: [f64; 7] = [
    7.969_367_292_973_471e-4,
    8.283_523_921_074_408e-2,
    1.239_533_716_464_143,
    5.447_250_030_587_687,
    8.747_165_001_998_17,
    5.303_240_382_353_949,
    1.0,
];
const PQ: [f64; 7] = [
    9.244_088_105_588_637e-4,
    8.562_884_743_544_745e-2,
    1.253_527_439_010_589_5,
    5.470_977_403_304_171,
    8.761_908_832_370_695,
    5.306_052_882_353_947,
    1.0,
];
const QP: [f64; 8] = [
    -1.136_638_388_984_691_6e-2,
    -1.282_527_186_705_093_1,
    -1.955_395_442_577_359_7e1,
    -9.320_601_521_237_683e1,
    -1.776_811_679_804_880_6e2,
    -1.470_775_051_549_511_8e2,
    -5.141_053_267_665_993e1,
    -6.050_143_506_007_285,
];
const QQ: [f64; 7] = [
    6.431_782_561_181_78e1,
    8.564_300_259_769_806e2,
    3.882_401_836_054_016_3e3,
    7.240_467_741_956_525e3,
    5.930_727_011_873_169e3,
    2.062_093_316_603_278_3e3,
    2.420_057_402_402_914e2,
];

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 5.0 {
        let z = x * x;
        if x < 1e-5 {
            return 1.0 - z / 4.0;
        }
        let p = (z - DR1) * (z - DR2);
        return p * polevl(z, &RP) / p1evl(z, &RQ);
    }
    if x.is_infinite() {
        return 0.0;
    }
    let w = 5.0 / x;
    let q = 25.0 / (x * x);
    let p = polevl(q, &PP) / polevl(q, &PQ);
    let q = polevl(q, &QP) / p1evl(q, &QQ);
    let xn = x - FRAC_PI_4;
    let p = p * xn.cos() - w * q * xn.sin();
    p * SQRT_FRAC_2_PI / x.sqrt()
}

// R0/S0 on [0, 2]
const R00: f64 = -6.250_000_000_000_000_00e-02;
const R01: f64 = 1.407_056_669_551_897_06e-03;
const R02: f64 = -1.599_556_310_840_355_98e-05;
const R03: f64 = 4.967_279_996_095_844_48e-08;
const S01: f64 = 1.915_375_995_383_634_61e-02;
const S02: f64 = 1.859_467_855_886_309_16e-04;
const S03: f64 = 1.177_184_640_426_236_83e-06;
const S04: f64 = 5.046_362_570_762_170_43e-09;
const S05: f64 = 1.235_422_744_261_379_14e-11;

/// Bessel function of the first kind, order one. Odd in `x`.
pub fn bessel_j1(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let sign = x.is_sign_negative();
    let ax = x.abs();
    if ax.is_infinite() {
        return 0.0;
    }
    let v = if ax >= 2.0 {
        j1_large(ax)
    } else if ax >= 1e-300 {
        let z = ax * ax;
        let r = z * (R00 + z * (R01 + z * (R02 + z * R03)));
        let s = 1.0 + z * (S01 + z * (S02 + z * (S03 + z * (S04 + z * S05))));
        (0.5 + r / s) * ax
    } else {
        0.5 * ax
    };
    if sign {
        -v
    } else {
        v
    }
}

fn j1_large(x: f64) -> f64 {
    // j1(x) = sqrt(2/(pi x)) (p1 cos(x - 3pi/4) - q1 sin(x - 3pi/4)),
    // with sin(x) ± cos(x) = -cos(2x)/(sin(x) ∓ cos(x)) for the worse one.
    let s = x.sin();
    let c = x.cos();
    let mut cc = s - c;
    if x < 8.9e307 {
        let mut ss = -s - c;
        let z = (2.0 * x).cos();
        if s * c > 0.0 {
            cc = z / ss;
        } else {
            ss = z / cc;
        }
        if x < 6.8e38 {
            cc = pone(x) * cc - qone(x) * ss;
        }
    }
    INV_SQRT_PI * cc / x.sqrt()
}

const PR8: [f64; 6] = [
    0.0,
    1.171_874_999_999_886_479_70e-01,
    1.323_948_065_930_735_751_29e+01,
    4.120_518_543_073_785_622_25e+02,
    3.874_745_389_139_605_322_27e+03,
    7.914_479_540_318_917_315_74e+03,
];
const PS8: [f64; 5] = [
    1.142_073_703_756_784_084_36e+02,
    3.650_930_834_208_534_633_94e+03,
    3.695_620_602_690_334_635_55e+04,
    9.760_279_359_349_508_013_11e+04,
    3.080_427_206_278_888_115_78e+04,
];
const PR5: [f64; 6] = [
    1.319_905_195_562_435_227_49e-11,
    1.171_874_931_906_140_976_38e-01,
    6.802_751_278_684_328_717_36e+00,
    1.083_081_829_901_891_097_73e+02,
    5.176_361_395_331_997_528_05e+02,
    5.287_152_013_633_375_418_07e+02,
];
const PS5: [f64; 5] = [
    5.928_059_872_211_313_319_21e+01,
    9.914_014_187_336_143_777_43e+02,
    5.353_266_952_914_879_766_47e+03,
    7.844_690_317_495_512_317_69e+03,
    1.504_046_888_103_610_626_79e+03,
];
const PR3: [f64; 6] = [
    3.025_039_161_373_736_180_24e-09,
    1.171_868_655_672_535_924_91e-01,
    3.932_977_500_333_156_406_50e+00,
    3.511_940_355_916_369_327_36e+01,
    9.105_501_107_507_812_719_18e+01,
    4.855_906_851_973_649_196_45e+01,
];
const PS3: [f64; 5] = [
    3.479_130_950_012_515_199_89e+01,
    3.367_624_587_478_257_467_41e+02,
    1.046_871_399_757_751_305_51e+03,
    8.908_113_463_982_564_326_22e+02,
    1.037_879_324_396_392_775_04e+02,
];
const PR2: [f64; 6] = [
    1.077_108_301_068_737_430_82e-07,
    1.171_762_194_626_833_480_94e-01,
    2.368_514_966_676_087_851_74e+00,
    1.224_261_091_482_612_329_17e+01,
    1.769_397_112_716_877_273_90e+01,
    5.073_523_125_888_184_992_50e+00,
];
const PS2: [f64; 5] = [
    2.143_648_593_638_214_094_88e+01,
    1.252_902_271_684_027_510_90e+02,
    2.322_764_690_571_628_136_69e+02,
    1.176_793_732_871_471_007_68e+02,
    8.364_638_933_716_182_833_68e+00,
];

fn pone(x: f64) -> f64 {
    let (p, q) = if x >= 8.0 {
        (&PR8, &PS8)
    } else if x >= 4.545_4 {
        (&PR5, &PS5)
    } else if x >= 2.857_1 {
        (&PR3, &PS3)
    } else {
        (&PR2, &PS2)
    };
    let z = 1.0 / (x * x);
    let r = p[0] + z * (p[1] + z * (p[2] + z * (p[3] + z * (p[4] + z * p[5]))));
    let s = 1.0 + z * (q[0] + z * (q[1] + z * (q[2] + z * (q[3] + z * q[4]))));
    1.0 + r / s
}

const QR8: [f64; 6] = [
    0.0,
    -1.025_390_624_999_927_141_61e-01,
    -1.627_175_345_445_899_878_88e+01,
    -7.596_017_225_139_501_078_96e+02,
    -1.184_980_667_024_295_871_67e+04,
    -4.843_851_242_857_503_530_10e+04,
];
const QS8: [f64; 6] = [
    1.613_953_697_007_229_095_56e+02,
    7.825_385_999_233_484_653_81e+03,
    1.338_753_362_872_495_781_63e+05,
    7.196_577_236_832_409_398_63e+05,
    6.666_012_326_177_763_752_64e+05,
    -2.944_902_643_038_346_432_15e+05,
];
const QR5: [f64; 6] = [
    -2.089_799_311_417_641_042_97e-11,
    -1.025_390_502_413_754_262_31e-01,
    -8.056_448_281_239_360_298_40e+00,
    -1.836_696_074_748_883_802_39e+02,
    -1.373_193_760_655_081_632_65e+03,
    -2.612_444_404_532_156_568_17e+03,
];
const QS5: [f64; 6] = [
    8.127_655_013_843_357_778_57e+01,
    1.991_798_734_604_859_646_42e+03,
    1.746_848_519_249_089_076_77e+04,
    4.985_142_709_103_522_793_16e+04,
    2.794_807_516_389_181_182_60e+04,
    -4.719_183_547_951_284_708_69e+03,
];
const QR3: [f64; 6] = [
    -5.078_312_264_617_665_613_69e-09,
    -1.025_378_298_208_370_897_45e-01,
    -4.610_115_811_394_734_031_13e+00,
    -5.784_722_165_627_836_432_12e+01,
    -2.282_445_407_376_316_950_38e+02,
    -2.192_101_284_789_093_256_22e+02,
];
const QS3: [f64; 6] = [
    4.766_515_503_237_295_092_73e+01,
    6.738_651_126_766_997_094_82e+02,
    3.380_152_866_795_263_435_05e+03,
    5.547_729_097_207_227_823_67e+03,
    1.903_119_193_388_107_987_63e+03,
    -1.352_011_914_443_073_408_17e+02,
];
const QR2: [f64; 6] = [
    -1.783_817_275_109_588_655_72e-07,
    -1.025_170_426_079_855_534_60e-01,
    -2.752_205_682_781_874_607_20e+00,
    -1.966_361_626_437_037_202_21e+01,
    -4.232_531_333_728_304_900_89e+01,
    -2.137_192_117_037_040_617_33e+01,
];
const QS2: [f64; 6] = [
    2.953_336_290_605_238_545_48e+01,
    2.529_815_499_821_905_291_36e+02,
    7.575_028_348_686_454_364_72e+02,
    7.393_932_053_204_672_456_56e+02,
    1.559_490_033_366_661_236_87e+02,
    -4.959_498_988_226_282_101_27e+00,
];

fn qone(x: f64) -> f64 {
    let (p, q) = if x >= 8.0 {
        (&QR8, &QS8)
    } else if x >= 4.545_4 {
        (&QR5, &QS5)
    } else if x >= 2.857_1 {
        (&QR3, &QS3)
    } else {
        (&QR2, &QS2)
    };
    let z = 1.0 / (x * x);
    let r = p[0] + z * (p[1] + z * (p[2] + z * (p[3] + z * (p[4] + z * p[5]))));
    let s = 1.0 + z * (q[0] + z * (q[1] + z * (q[2] + z * (q[3] + z * (q[4] + z * q[5])))));
    (0.375 + r / s) / x
}

/// k-th positive zero (k ≥ 1) of J₀ or J₁: McMahon's expansion refined by
/// Newton iteration.
pub fn bessel_zero(order: BesselOrder, k: usize) -> f64 {
    assert!(k >= 1, "zeros are numbered from 1");
    let nu = order.nu();
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let e = 8.0 * beta;
    let mut x = beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e.powi(5));
    for _ in 0..8 {
        let (f, df) = match order {
            BesselOrder::Zero => (bessel_j0(x), -bessel_j1(x)),
            BesselOrder::One => {
                let j1 = bessel_j1(x);
                (j1, bessel_j0(x) - j1 / x)
            }
        };
        let step = f / df;
        x -= step;
        if step.abs() <= 1e-15 * x {
            break;
        }
    }
    x
}
