// Camera math shared by the page. Quaternions are [x, y, z, w]; the camera
// looks down its local -z with +y up.

export function rotate(q, v) {
  const [qx, qy, qz, qw] = q;
  const tx = 2 * (qy * v[2] - qz * v[1]);
  const ty = 2 * (qz * v[0] - qx * v[2]);
  const tz = 2 * (qx * v[1] - qy * v[0]);
  return [
    v[0] + qw * tx + (qy * tz - qz * ty),
    v[1] + qw * ty + (qz * tx - qx * tz),
    v[2] + qw * tz + (qx * ty - qy * tx),
  ];
}

// c: Explorer.camera() output, fovDeg: vertical field of view
export function makeCamera(c, fovDeg, width, height) {
  const q = [c[3], c[4], c[5], c[6]];
  return {
    pos: [c[0], c[1], c[2]],
    q,
    inv: [-q[0], -q[1], -q[2], q[3]],
    focal: 1 / Math.tan((fovDeg * Math.PI) / 360),
    width,
    height,
  };
}

// World point to [sx, sy, depth] in pixels, or null behind the near plane.
export function project(cam, p) {
  const v = rotate(cam.inv, [p[0] - cam.pos[0], p[1] - cam.pos[1], p[2] - cam.pos[2]]);
  if (v[2] > -0.05) return null;
  const h = cam.height / 2;
  const d = -v[2];
  return [cam.width / 2 + (v[0] * cam.focal * h) / d, h - (v[1] * cam.focal * h) / d, d];
}

// World direction of the ray through pixel (sx, sy).
export function unproject(cam, sx, sy) {
  const h = cam.height / 2;
  const x = (sx - cam.width / 2) / h / cam.focal;
  const y = (h - sy) / h / cam.focal;
  return rotate(cam.q, [x, y, -1]);
}
