use super::gf2::F2Basis;
use super::tables::LogTables;
use super::FieldElement;

/// The bottom field `F_{q0}` of a tower in its own compact representation.
///
/// Elements are polynomials in a fixed generator `gamma` of the level-0
/// subfield, so they embed F2-linearly into the top field. When `q0 <= 2^16`
/// the compact form also carries log tables and serves as the fast path for
/// level-0 linear algebra.
#[derive(Clone, Debug)]
pub struct BaseField {
    degree: u32,
    modulus: u128,
    tables: Option<LogTables>,
    embed_basis: Vec<u128>,
    embed_table: Vec<u128>,
    projector: F2Basis,
}

impl BaseField {
    /// `powers` must hold `gamma^0 .. gamma^degree` as top-field words.
    pub(crate) fn new(degree: u32, powers: &[u128]) -> Self {
        assert_eq!(powers.len(), degree as usize + 1);
        let embed_basis = powers[..degree as usize].to_vec();
        let projector = F2Basis::new(&embed_basis).expect("gamma has full degree");
        let modulus = projector
            .decode(powers[degree as usize])
            .expect("gamma^degree lies in the subfield");
        let tables = (degree <= 16).then(|| LogTables::new(degree, modulus));
        let embed_table = if degree <= 16 {
            (0..1u128 << degree)
                .map(|s| embed_bits(&embed_basis, s))
                .collect()
        } else {
            Vec::new()
        };
        Self {
            degree,
            modulus,
            tables,
            embed_basis,
            embed_table,
            projector,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Low part of the minimal polynomial of the generator used for the
    /// compact representation.
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub(crate) fn tables(&self) -> Option<&LogTables> {
        self.tables.as_ref()
    }

    pub fn has_fast_path(&self) -> bool {
        self.tables.is_some()
    }

    /// Compact element -> top-field element.
    #[inline]
    pub fn embed(&self, s: u128) -> FieldElement {
        if !self.embed_table.is_empty() {
            FieldElement(self.embed_table[s as usize])
        } else {
            FieldElement(embed_bits(&self.embed_basis, s))
        }
    }

    /// Top-field element -> compact element, `None` outside `F_{q0}`.
    #[inline]
    pub fn project(&self, x: FieldElement) -> Option<u128> {
        self.projector.decode(x.0)
    }

    /// Every element of `F_{q0}` as a top-field element, sorted by encoding.
    /// Only available for `q0 <= 2^16`.
    pub fn elements_by_encoding(&self) -> Option<Vec<FieldElement>> {
        if self.embed_table.is_empty() {
            return None;
        }
        let mut all: Vec<FieldElement> = self.embed_table.iter().map(|&v| FieldElement(v)).collect();
        all.sort_unstable();
        Some(all)
    }

    #[cfg(test)]
    pub(crate) fn mul_small(&self, a: u128, b: u128) -> u128 {
        match &self.tables {
            Some(t) => t.mul(a as u16, b as u16) as u128,
            None => super::gf2::mulmod(a, b, self.degree, self.modulus),
        }
    }
}

fn embed_bits(basis: &[u128], s: u128) -> u128 {
    basis
        .iter()
        .enumerate()
        .filter(|(i, _)| s >> i & 1 == 1)
        .fold(0, |acc, (_, &b)| acc ^ b)
}
