use rand::Rng;

/// The six voter atoms `(x, y, z) ∈ {±1}³ \ {±(1,1,1)}` in a fixed
/// enumeration order. Bit 0 is the sign of `x` (a vs b), bit 1 of `y`
/// (b vs c), bit 2 of `z` (c vs a); the entry stores those three bits.
pub const ATOMS: [u8; 6] = [
    0b011, // (+,+,-): a>b>c
    0b001, // (+,-,-): a>c>b
    0b010, // (-,+,-): b>a>c
    0b110, // (-,+,+): b>c>a
    0b101, // (+,-,+): c>a>b
    0b100, // (-,-,+): c>b>a
];

/// The rankings matching [`ATOMS`], top alternative first (0=a, 1=b, 2=c).
pub const ATOM_RANKINGS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The uniform law on profiles of `n` independent ranking atoms.
#[derive(Debug, Clone, Copy)]
pub struct CondorcetSource {
    pub n: u32,
}

impl CondorcetSource {
    pub fn new(n: u32) -> Self {
        Self { n }
    }

    /// Number of profiles `6^n` (guard enumeration at n ≤ 12).
    pub fn profile_count(&self) -> u64 {
        6u64.pow(self.n)
    }

    /// Decodes profile index `idx` (base-6 digits, voter 0 least
    /// significant) into the three preference bit-vectors `(x, y, z)`.
    pub fn profile(&self, mut idx: u64) -> (u32, u32, u32) {
        let (mut x, mut y, mut z) = (0u32, 0u32, 0u32);
        for voter in 0..self.n {
            let atom = ATOMS[(idx % 6) as usize];
            idx /= 6;
            x |= ((atom & 1) as u32) << voter;
            y |= (((atom >> 1) & 1) as u32) << voter;
            z |= (((atom >> 2) & 1) as u32) << voter;
        }
        (x, y, z)
    }

    /// Draws a uniform profile as preference bit-vectors.
    pub fn sample(&self, rng: &mut impl Rng) -> (u32, u32, u32) {
        let (mut x, mut y, mut z) = (0u32, 0u32, 0u32);
        for voter in 0..self.n {
            let atom = ATOMS[rng.gen_range(0..6)];
            x |= ((atom & 1) as u32) << voter;
            y |= (((atom >> 1) & 1) as u32) << voter;
            z |= (((atom >> 2) & 1) as u32) << voter;
        }
        (x, y, z)
    }
}
