//! Deterministic variate source: a 64-bit counter hashed with the splitmix64
//! finalizer, turned into standard normals by the Box–Muller transform.
//! Identical (seed, draw index) always yields the identical variate, on any
//! platform.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Map a hashed word to (0, 1]; never 0, so ln is safe.
fn unit(word: u64) -> f64 {
    ((word >> 11) + 1) as f64 * (1.0 / 9007199254740992.0)
}

pub(crate) struct NormalSource {
    seed: u64,
    counter: u64,
    spare: Option<f64>,
}

impl NormalSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            counter: 0,
            spare: None,
        }
    }

    fn next_unit(&mut self) -> f64 {
        let word = mix(self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN)));
        self.counter = self.counter.wrapping_add(1);
        unit(word)
    }

    pub fn next_standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.next_unit();
        let u2 = self.next_unit();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}
