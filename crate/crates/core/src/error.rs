use thiserror::Error;

/// Errors raised by constructors, validators and searches.
///
/// Mathematical findings (a non-separable algebra, a failed axiom in a
/// report) are returned as data; this type is for inputs that cannot be
/// processed at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field degree must be positive")]
    ZeroDegree,
    #[error("field of order {p}^{n} is too large for table arithmetic")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("F_{{{p}^{small}}} does not embed in F_{{{p}^{large}}}")]
    NoEmbedding { p: u32, small: u32, large: u32 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("coefficient {value} out of range for F_{p}")]
    CoefficientRange { value: i64, p: u32 },
    #[error("algebra axiom violated: {0}")]
    Algebra(AlgebraViolation),
    #[error("group axiom violated: {0}")]
    Group(String),
    #[error("Hopf axiom violated: {0}")]
    Hopf(HopfViolation),
    #[error("G-set invalid: {0}")]
    GSet(String),
    #[error("representation invalid: {0}")]
    Representation(String),
    #[error("comodule invalid: {0}")]
    Comodule(String),
    #[error("separable monoid axiom violated: {0}")]
    Csep(CsepViolation),
    #[error("idempotents are not rational; extension of degree {0} required")]
    NeedsExtension(u32),
    #[error("search budget exceeded: {needed} candidates, budget {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u128 },
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("empty object where a unit is required")]
    Empty,
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraViolation {
    #[error("zero-dimensional algebra")]
    ZeroDimensional,
    #[error("structure constants have wrong shape")]
    Shape,
    #[error("associativity fails at basis triple ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("commutativity fails at basis pair ({0}, {1})")]
    Commutativity(usize, usize),
    #[error("unit law fails at basis vector {0}")]
    Unit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum HopfViolation {
    #[error("shape of structure maps")]
    Shape,
    #[error("coassociativity")]
    Coassociativity,
    #[error("counit law")]
    CounitLaw,
    #[error("antipode law")]
    AntipodeLaw,
    #[error("comultiplication or counit is not an algebra map")]
    BialgebraCompat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, serde::Serialize)]
pub enum CsepViolation {
    #[error("shape of structure maps")]
    Shape,
    #[error("associativity")]
    Associativity,
    #[error("unit law")]
    Unit,
    #[error("commutativity")]
    Commutativity,
    #[error("coassociativity")]
    Coassociativity,
    #[error("counit law")]
    Counit,
    #[error("cocommutativity")]
    Cocommutativity,
    #[error("special law mu . delta = id")]
    Special,
    #[error("Frobenius law")]
    Frobenius,
    #[error("structure map is not equivariant")]
    Equivariance,
}
