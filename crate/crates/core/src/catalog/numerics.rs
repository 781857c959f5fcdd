//! Closed-form offsets, prefactors and denominator bases of the
//! factorial-series displays.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::combinatorics::{bernoulli_polynomial, generalized_binomial};
use crate::constants::{constant, eta_complex, zeta_complex, ConstantId};
use crate::error::Result;
use crate::real::{ComplexRational, ComplexReal};

use super::displays::ceil_m_plus_one;
use super::{cr, parity, Ctx, Family, FormulaId};

pub(crate) struct Numerics {
    pub offset: ComplexReal,
    pub prefactors: Vec<ComplexReal>,
    pub base: Float,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

impl Ctx {
    pub(crate) fn xf(&self) -> Float {
        Float::with_val(self.prec, &self.x)
    }

    /// `x^e` for rational `e`.
    pub(crate) fn x_pow(&self, e: Rational) -> Float {
        let x = self.xf();
        if *e.denom() == 1 {
            return x.pow(e.numer().to_i32().expect("moderate exponent"));
        }
        if *e.denom() == 2 {
            let root = Float::with_val(self.prec, x.sqrt_ref());
            return root.pow(e.numer().to_i32().expect("moderate exponent"));
        }
        x.pow(Float::with_val(self.prec, &e))
    }

    pub(crate) fn ln_x(&self) -> Float {
        self.xf().ln()
    }

    /// `B_k({x})`.
    pub(crate) fn b(&self, k: usize) -> Float {
        Float::with_val(self.prec, bernoulli_polynomial(k).eval(&self.t))
    }

    pub(crate) fn c(&self, id: ConstantId) -> Result<Float> {
        constant(id, self.prec)
    }

    pub(crate) fn f(&self, value: Rational) -> Float {
        Float::with_val(self.prec, value)
    }

    pub(crate) fn pi(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi)
    }

    pub(crate) fn log_a(&self) -> Float {
        Float::with_val(self.prec, self.a.as_ref().expect("validated")).ln()
    }

    /// `a^x` as `exp(x log a)`.
    pub(crate) fn a_pow_x(&self) -> Float {
        (self.log_a() * self.xf()).exp()
    }

    fn m(&self) -> ComplexRational {
        self.m.clone().expect("validated")
    }

    fn mc(&self) -> ComplexReal {
        self.m().to_complex_real(self.prec)
    }

    /// `x^z` for complex `z`.
    fn x_cpow(&self, z: &ComplexReal) -> ComplexReal {
        ComplexReal::real_base_pow(&self.xf(), z)
    }
}

fn plus(z: &ComplexReal, r: i64) -> ComplexReal {
    ComplexReal::new(Float::with_val(z.prec(), &z.re + r), z.im.clone())
}

fn neg(m: &ComplexRational) -> ComplexRational {
    ComplexRational::new(-m.re.clone(), -m.im.clone())
}

fn single(offset: Float, prefactor: Float, base: Float) -> Numerics {
    Numerics { offset: cr(offset), prefactors: vec![cr(prefactor)], base }
}

pub(crate) fn numerics(formula: FormulaId, ctx: &Ctx) -> Result<Numerics> {
    let prec = ctx.prec;
    let v = formula.variant;
    let x = ctx.xf();
    let one = Float::with_val(prec, 1);
    let num = match formula.family {
        Family::Harmonic => {
            let base = ctx.ln_x() + ctx.c(ConstantId::EulerGamma)?;
            let offset = if v == 1 { base - ctx.b(1) / &x } else { base };
            single(offset, one, x)
        }
        Family::Zeta2 => {
            let base = ctx.c(ConstantId::Zeta(q(2, 1)))? - Float::with_val(prec, x.recip_ref());
            if v == 1 {
                let offset = base - ctx.b(1) / ctx.x_pow(q(2, 1));
                single(offset, Float::with_val(prec, x.recip_ref()), x)
            } else {
                single(base, one, x)
            }
        }
        Family::Zeta3 => {
            let half_inv_sq = ctx.x_pow(q(-2, 1)) / 2u32;
            let base = ctx.c(ConstantId::Zeta(q(3, 1)))? - &half_inv_sq;
            let offset = if v == 1 { base - ctx.b(1) / ctx.x_pow(q(3, 1)) } else { base };
            single(offset, half_inv_sq, x)
        }
        Family::Sqrt => {
            let base = ctx.x_pow(q(3, 2)) * 2u32 / 3u32 - ctx.c(ConstantId::Zeta(q(3, 2)))? / (ctx.pi() * 4u32);
            let sx = ctx.x_pow(q(1, 2));
            match v {
                1 => single(base - Float::with_val(prec, &sx * ctx.b(1)), sx, x),
                2 => {
                    let offset = base - Float::with_val(prec, &sx * ctx.b(1)) + ctx.b(2) / Float::with_val(prec, &sx * 4u32);
                    single(offset, Float::with_val(prec, sx.recip_ref()), x)
                }
                _ => single(base, ctx.x_pow(q(3, 2)), x),
            }
        }
        Family::KSqrt => {
            let pi = ctx.pi();
            let base = ctx.x_pow(q(5, 2)) * 2u32 / 5u32
                - ctx.c(ConstantId::Zeta(q(5, 2)))? * 3u32 / (Float::with_val(prec, pi.square_ref()) * 16u32);
            let x32 = ctx.x_pow(q(3, 2));
            let sx = ctx.x_pow(q(1, 2));
            match v {
                1 => single(base - Float::with_val(prec, &x32 * ctx.b(1)), x32 * 3u32 / 2u32, x),
                2 => {
                    let offset = base - Float::with_val(prec, &x32 * ctx.b(1)) + Float::with_val(prec, &sx * ctx.b(2)) * 3u32 / 4u32
                        - ctx.b(3) / Float::with_val(prec, &sx * 8u32);
                    single(offset, Float::with_val(prec, sx.recip_ref()) * 3u32 / 2u32, x)
                }
                _ => single(base, ctx.x_pow(q(5, 2)) * 3u32 / 2u32, x),
            }
        }
        Family::K2Sqrt => {
            let pi = ctx.pi();
            let base = ctx.x_pow(q(7, 2)) * 2u32 / 7u32
                + ctx.c(ConstantId::Zeta(q(7, 2)))? * 15u32 / (pi.pow(3u32) * 64u32);
            let x52 = ctx.x_pow(q(5, 2));
            let sx = ctx.x_pow(q(1, 2));
            match v {
                1 => single(base - Float::with_val(prec, &x52 * ctx.b(1)), x52 * 15u32 / 4u32, x),
                2 => {
                    let offset = base - Float::with_val(prec, &x52 * ctx.b(1)) + ctx.x_pow(q(3, 2)) * ctx.b(2) * 5u32 / 4u32
                        - Float::with_val(prec, &sx * ctx.b(3)) * 5u32 / 8u32
                        + ctx.b(4) * 5u32 / Float::with_val(prec, &sx * 64u32);
                    single(offset, Float::with_val(prec, sx.recip_ref()) * 15u32 / 4u32, x)
                }
                _ => single(base, ctx.x_pow(q(7, 2)) * 15u32 / 4u32, x),
            }
        }
        Family::InvSqrt => {
            let sx = ctx.x_pow(q(1, 2));
            let base = Float::with_val(prec, &sx * 2u32) + ctx.c(ConstantId::Zeta(q(1, 2)))?;
            if v == 1 {
                let inv = Float::with_val(prec, sx.recip_ref());
                single(base - Float::with_val(prec, ctx.b(1) * &inv), inv, x)
            } else {
                single(base, sx, x)
            }
        }
        Family::Zeta32 => {
            let inv_sx = ctx.x_pow(q(-1, 2));
            let base = ctx.c(ConstantId::Zeta(q(3, 2)))? - Float::with_val(prec, &inv_sx * 2u32);
            let offset = if v == 1 { base - ctx.b(1) * ctx.x_pow(q(-3, 2)) } else { base };
            single(offset, inv_sx * 2u32, x)
        }
        Family::Zeta52 => {
            let base = ctx.c(ConstantId::Zeta(q(5, 2)))? - ctx.x_pow(q(-3, 2)) * 2u32 / 3u32;
            if v == 1 {
                let offset = base - ctx.b(1) * ctx.x_pow(q(-5, 2));
                single(offset, ctx.x_pow(q(-3, 2)) * 4u32 / 3u32, x)
            } else {
                single(base, ctx.x_pow(q(-1, 2)) * 4u32 / 3u32, x)
            }
        }
        Family::FaulhaberExt | Family::FaulhaberInt => faulhaber(v, ctx)?,
        Family::LogFactorial => {
            let ln_x = ctx.ln_x();
            let base = Float::with_val(prec, &x * &ln_x) - &x + ctx.c(ConstantId::LogTwoPi)? / 2u32 - ln_x * ctx.b(1);
            match v {
                1 => single(base, one, x),
                2 => single(base + ctx.b(2) / Float::with_val(prec, &x * 2u32), one, x),
                _ => single(base, x.clone(), x),
            }
        }
        Family::KLogK => {
            let ln_x = ctx.ln_x();
            let x2 = Float::with_val(prec, x.square_ref());
            let base = Float::with_val(prec, &x2 * &ln_x) / 2u32 - Float::with_val(prec, &x2 / 4u32) + ctx.b(2) / 2u32
                - ctx.c(ConstantId::ZetaPrime(q(-1, 1)))?
                - Float::with_val(prec, &x * &ln_x) * ctx.b(1)
                + Float::with_val(prec, &ln_x * ctx.b(2)) / 2u32;
            if v == 1 {
                single(base, one, x)
            } else {
                single(base - ctx.b(3) / Float::with_val(prec, &x * 6u32), one, x)
            }
        }
        Family::LogkOverK => {
            let ln_x = ctx.ln_x();
            let offset = Float::with_val(prec, ln_x.square_ref()) / 2u32 + ctx.c(ConstantId::Stieltjes1)?
                - Float::with_val(prec, &ln_x / &x) * ctx.b(1);
            Numerics { offset: cr(offset), prefactors: vec![cr(one), cr(ln_x)], base: x }
        }
        Family::LogkOverK2 => {
            let ln_x = ctx.ln_x();
            let inv_x = Float::with_val(prec, x.recip_ref());
            let offset = -ctx.c(ConstantId::ZetaPrime(q(2, 1)))? - Float::with_val(prec, &ln_x * &inv_x) - &inv_x
                - Float::with_val(prec, &ln_x * ctx.x_pow(q(-2, 1))) * ctx.b(1);
            let log_part = Float::with_val(prec, &ln_x * &inv_x);
            Numerics { offset: cr(offset), prefactors: vec![cr(-inv_x), cr(log_part)], base: x }
        }
        Family::LogSquared => {
            let ln_x = ctx.ln_x();
            let gamma = ctx.c(ConstantId::EulerGamma)?;
            let pi = ctx.pi();
            let ln_pi = Float::with_val(prec, pi.ln_ref());
            let ln2 = ctx.c(ConstantId::LogTwo)?;
            let ln_x_sq = Float::with_val(prec, ln_x.square_ref());
            let offset = Float::with_val(prec, &x * &ln_x_sq) - Float::with_val(prec, &x * &ln_x) * 2u32
                + Float::with_val(prec, &x * 2u32)
                + Float::with_val(prec, gamma.square_ref()) / 2u32
                - Float::with_val(prec, pi.square_ref()) / 24u32
                - Float::with_val(prec, ln2.square_ref()) / 2u32
                - Float::with_val(prec, &ln2 * &ln_pi)
                - Float::with_val(prec, ln_pi.square_ref()) / 2u32
                + ctx.c(ConstantId::Stieltjes1)?
                - Float::with_val(prec, &ln_x_sq * ctx.b(1))
                + Float::with_val(prec, &ln_x / &x) * ctx.b(2);
            let two = Float::with_val(prec, 2);
            Numerics { offset: cr(offset), prefactors: vec![cr(two), cr(ln_x * 2u32)], base: x }
        }
        Family::GregoryLeibniz => {
            let offset = ctx.pi() / 4u32;
            let base = Float::with_val(prec, &x * 2u32) + 1u32;
            let sign = parity(&ctx.n, prec);
            if v == 1 {
                single(offset, sign / 2u32, base)
            } else {
                single(offset, -sign, base)
            }
        }
        Family::AltHarmonic => {
            let offset = ctx.c(ConstantId::LogTwo)?;
            let sign = parity(&ctx.n, prec);
            if v == 1 {
                single(offset, sign / 2u32, x)
            } else {
                single(offset, sign, x)
            }
        }
        Family::AltFaulhaberGen => {
            let m = ctx.mc();
            let offset = eta_complex(&neg(&ctx.m()), prec)?;
            let x_m = ctx.x_cpow(&m);
            let sign = parity(&ctx.n, prec);
            let denominator = if v == 1 { plus(&m, 1).scale(&Float::with_val(prec, 2)) } else { plus(&m, 1) };
            let prefactor = x_m.scale(&sign).div(&denominator);
            Numerics { offset, prefactors: vec![prefactor], base: x }
        }
        Family::GeometricStirling => {
            let a = ctx.a.clone().expect("validated");
            let a_x = ctx.a_pow_x();
            let offset = Float::with_val(prec, &a_x / ctx.log_a()) + ctx.f(Rational::from(1) / (1 - a));
            single(offset, a_x, x)
        }
        Family::AltGeometricStirling => {
            let a = ctx.a.clone().expect("validated");
            let offset = ctx.f(Rational::from(1) / (1 + a));
            let sign = parity(&ctx.n, prec);
            let a_x = ctx.a_pow_x();
            if v == 1 {
                single(offset, sign * a_x / 2u32, x)
            } else {
                single(offset, -sign * a_x, x)
            }
        }
        _ => unreachable!("shape() rejects non-factorial-series families"),
    };
    Ok(num)
}

fn faulhaber(v: u8, ctx: &Ctx) -> Result<Numerics> {
    let prec = ctx.prec;
    let x = ctx.xf();
    let m = ctx.mc();
    let m_plus_one = plus(&m, 1);
    let x_m1 = ctx.x_cpow(&m_plus_one);
    let zeta = zeta_complex(&neg(&ctx.m()), prec)?;
    let base = x_m1.div(&m_plus_one) + zeta;
    let num = match v {
        1 => Numerics { offset: base, prefactors: vec![x_m1.div(&m_plus_one)], base: x },
        2 => {
            let x_m = ctx.x_cpow(&m);
            let offset = base - x_m.scale(&ctx.b(1));
            Numerics { offset, prefactors: vec![x_m.div(&m_plus_one)], base: x }
        }
        _ => {
            let m_q = ctx.m().re;
            let c = ceil_m_plus_one(&ctx.m());
            let m_plus_one_q = Rational::from(&m_q + 1u32);
            let mut finite = Float::new(prec);
            for k in 1..c {
                let k = k as usize;
                let coefficient = generalized_binomial(&m_plus_one_q, k);
                let term = ctx.f(coefficient) * ctx.b(k) * ctx.x_pow(Rational::from(&m_q + 1u32) - k as u64);
                if k % 2 == 1 {
                    finite -= term;
                } else {
                    finite += term;
                }
            }
            let inv = Float::with_val(prec, ctx.f(m_plus_one_q.clone()).recip_ref());
            let offset = base + cr(Float::with_val(prec, &finite * &inv));
            let power = ctx.x_pow(Rational::from(&m_q + 2u32) - c);
            let mut prefactor = power * inv;
            if c % 2 != 0 {
                prefactor = -prefactor;
            }
            Numerics { offset, prefactors: vec![cr(prefactor)], base: x }
        }
    };
    Ok(num)
}
