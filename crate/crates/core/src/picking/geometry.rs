use crate::layout::Vec3;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
#[error("ray direction must be finite and non-zero")]
pub struct InvalidRay;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ray {
    origin: Vec3,
    direction: Vec3,
}

impl Ray {
    /// Normalizes `direction`.
    pub fn new(origin: Vec3, direction: Vec3) -> Result<Self, InvalidRay> {
        let norm = direction.norm();
        if !(norm > 0.0 && norm.is_finite()) || !origin.iter().all(|c| c.is_finite()) {
            return Err(InvalidRay);
        }
        Ok(Ray {
            origin,
            direction: direction / norm,
        })
    }

    pub fn origin(&self) -> Vec3 {
        self.origin
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    pub fn at(&self, t: f64) -> Vec3 {
        self.origin + self.direction * t
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Primitive {
    Sphere { center: Vec3, radius: f64 },
    /// Segment `a..b` swept by a sphere of `radius`.
    Capsule { a: Vec3, b: Vec3, radius: f64 },
}

impl Primitive {
    pub fn bounds(&self) -> Aabb {
        match *self {
            Primitive::Sphere { center, radius } => Aabb {
                min: center.add_scalar(-radius),
                max: center.add_scalar(radius),
            },
            Primitive::Capsule { a, b, radius } => Aabb {
                min: a.inf(&b).add_scalar(-radius),
                max: a.sup(&b).add_scalar(radius),
            },
        }
    }

    /// Distance along the ray to the first surface crossing, or 0 when the
    /// origin already lies inside.
    pub fn intersect(&self, ray: &Ray) -> Option<f64> {
        match *self {
            Primitive::Sphere { center, radius } => sphere_entry(ray, center, radius),
            Primitive::Capsule { a, b, radius } => capsule_entry(ray, a, b, radius),
        }
    }
}

fn sphere_entry(ray: &Ray, center: Vec3, radius: f64) -> Option<f64> {
    let oc = ray.origin - center;
    let c = oc.norm_squared() - radius * radius;
    if c <= 0.0 {
        return Some(0.0);
    }
    let b = oc.dot(&ray.direction);
    if b > 0.0 {
        return None;
    }
    let disc = b * b - c;
    if disc < 0.0 {
        return None;
    }
    // Numerically stable form of -b - sqrt(disc).
    let q = -b + disc.sqrt();
    Some(c / q)
}

fn capsule_entry(ray: &Ray, a: Vec3, b: Vec3, radius: f64) -> Option<f64> {
    let axis = b - a;
    let length2 = axis.norm_squared();
    if length2 == 0.0 {
        return sphere_entry(ray, a, radius);
    }
    // Origin inside: distance from origin to the segment.
    let s = ((ray.origin - a).dot(&axis) / length2).clamp(0.0, 1.0);
    if (ray.origin - (a + axis * s)).norm_squared() <= radius * radius {
        return Some(0.0);
    }

    let mut best = f64::INFINITY;
    let length = length2.sqrt();
    let u = axis / length;
    let oa = ray.origin - a;
    let d_perp = ray.direction - u * ray.direction.dot(&u);
    let o_perp = oa - u * oa.dot(&u);
    let qa = d_perp.norm_squared();
    if qa > 1e-18 {
        let qb = o_perp.dot(&d_perp);
        let qc = o_perp.norm_squared() - radius * radius;
        let disc = qb * qb - qa * qc;
        if disc >= 0.0 {
            let t = (-qb - disc.sqrt()) / qa;
            let along = oa.dot(&u) + t * ray.direction.dot(&u);
            if t >= 0.0 && (0.0..=length).contains(&along) {
                best = t;
            }
        }
    }
    for cap in [a, b] {
        if let Some(t) = sphere_entry(ray, cap, radius) {
            best = best.min(t);
        }
    }
    best.is_finite().then_some(best)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn empty() -> Self {
        Aabb {
            min: Vec3::repeat(f64::INFINITY),
            max: Vec3::repeat(f64::NEG_INFINITY),
        }
    }

    pub fn union(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: self.min.inf(&other.min),
            max: self.max.sup(&other.max),
        }
    }

    pub fn grow(&mut self, p: &Vec3) {
        self.min = self.min.inf(p);
        self.max = self.max.sup(p);
    }

    pub fn center(&self) -> Vec3 {
        (self.min + self.max) * 0.5
    }

    /// Slab test; returns the entry distance clamped at 0.
    pub fn hit(&self, ray: &Ray, inv_dir: &Vec3, t_max: f64) -> Option<f64> {
        let mut t0 = 0.0f64;
        let mut t1 = t_max;
        for k in 0..3 {
            let mut near = (self.min[k] - ray.origin[k]) * inv_dir[k];
            let mut far = (self.max[k] - ray.origin[k]) * inv_dir[k];
            if near > far {
                std::mem::swap(&mut near, &mut far);
            }
            // NaN from 0 * inf means the ray lies in the slab plane.
            if near.is_nan() || far.is_nan() {
                if ray.origin[k] < self.min[k] || ray.origin[k] > self.max[k] {
                    return None;
                }
                continue;
            }
            t0 = t0.max(near);
            t1 = t1.min(far);
            if t0 > t1 {
                return None;
            }
        }
        Some(t0)
    }
}
