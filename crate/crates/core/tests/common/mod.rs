//! Line-by-line transliteration of the C reference generator,
//! used as an independent oracle for the library's evaluation order.

pub struct Reference {
    x: f64,
    y: f64,
    z: f64,
}

fn expq(q: f64, w: f64) -> f64 {
    if q == 1.0 {
        w.exp()
    } else {
        // the reference evaluates this exp in long double
        ((1.0 + (1.0 - q) * w).ln() / (1.0 - q)).exp()
    }
}

fn lnq(q: f64, w: f64) -> f64 {
    if q == 1.0 {
        w.ln()
    } else {
        ((w.ln() * (1.0 - q)).exp() - 1.0) / (1.0 - q)
    }
}

fn q8(w: f64, v: f64) -> f64 {
    8.0 * w * v * (((16.0 * w * w - 24.0) * w * w + 10.0) * w * w - 1.0)
}

fn p8(w: f64) -> f64 {
    (((128.0 * w * w - 256.0) * w * w + 160.0) * w * w - 32.0) * w * w + 1.0
}

fn f(z: f64) -> f64 {
    1.0 - (1.0 - 1.99999 * z).abs()
}

impl Reference {
    pub fn seed(v0: f64, z0: f64) -> Self {
        Reference { x: (1.0 - v0 * v0).sqrt(), y: v0, z: z0 }
    }

    pub fn step(&mut self, q: f64) -> (f64, f64) {
        self.y = q8(self.x, self.y);
        self.x = p8(self.x);
        let qq = (q + 1.0) / (3.0 - q);
        self.z = f(expq(qq, -self.z * self.z * 0.5));
        self.z = (-2.0 * lnq(qq, self.z)).sqrt();
        (self.x * self.z, self.y * self.z)
    }
}
