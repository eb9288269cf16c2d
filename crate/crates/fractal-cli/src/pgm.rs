//! Binary PGM (P5) output: maxval 255, row-major top to bottom.
//!
//! Pixel intensity is the escape iteration scaled to 0..255; bounded
//! pixels are white (255). Pole and overflow orbits shade like escapes at
//! their failure index. Integer scaling keeps the bytes bit-exact across
//! platforms and worker counts.

use std::io::{self, Write};

use fractal_core::MembershipMap;

pub fn intensity(iteration: Option<u32>, max_iter: u32) -> u8 {
    match iteration {
        None => 255,
        Some(k) => ((u64::from(k) * 255) / u64::from(max_iter.max(1))) as u8,
    }
}

pub fn encode(map: &MembershipMap) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(32 + map.cells.len());
    bytes
        .extend_from_slice(format!("P5\n{} {}\n255\n", map.grid.width, map.grid.height).as_bytes());
    bytes.extend(
        map.cells
            .iter()
            .map(|status| intensity(status.iteration(), map.max_iter)),
    );
    bytes
}

pub fn write_to(writer: &mut impl Write, map: &MembershipMap) -> io::Result<()> {
    writer.write_all(&encode(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fractal_core::{scan_grid, EscapeRadius, GridSpec, Recurrence, ScanParams};

    #[test]
    fn header_and_length() {
        let grid = GridSpec::default_window(16, 8);
        let map = scan_grid(
            &grid,
            &Recurrence::PlainPower { d: 2 },
            &ScanParams::new(EscapeRadius::Fixed(2.0), 32),
        );
        let bytes = encode(&map);
        assert!(bytes.starts_with(b"P5\n16 8\n255\n"));
        assert_eq!(bytes.len(), b"P5\n16 8\n255\n".len() + 16 * 8);
    }

    #[test]
    fn bounded_pixels_are_white_and_escapes_darker() {
        assert_eq!(intensity(None, 100), 255);
        assert_eq!(intensity(Some(1), 100), 2);
        assert_eq!(intensity(Some(99), 100), 252);
        // escape index stays below max_iter, so nothing reaches 255
        assert!(intensity(Some(99), 100) < 255);
    }
}
