use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{subfield_degree, CycElem};
use crate::error::Result;
use crate::hermitian::{Angle, TriangleShape};

/// One necessary condition on an irrational angular invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub tag: String,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrationalPsiReport {
    pub angles: [String; 3],
    pub nonuniform: bool,
    pub constraints: Vec<Constraint>,
}

fn constraint(tag: &str, statement: String) -> Constraint {
    Constraint {
        tag: tag.to_string(),
        statement,
    }
}

/// The constraints an arithmetic lattice imposes on ψ when ψ/π is not known
/// to be rational. Nothing about ψ itself is computed.
pub fn irrational_psi_report(angles: [Angle; 3], nonuniform: bool) -> Result<IrrationalPsiReport> {
    let mut constraints = Vec::new();
    if nonuniform {
        constraints.push(constraint(
            "BIQUADRATIC",
            "e^{iψ} lies in a biquadratic extension of Q".to_string(),
        ));
    }
    constraints.push(constraint(
        "PHASE_IN_E",
        "e^{2iψ} ∈ E and cos²ψ ∈ F, where E/F is the CM pair defining the lattice".to_string(),
    ));
    let third = Ratio::new(1, 3);
    let small = angles.iter().all(|a| match a {
        Angle::Ideal => true,
        Angle::PiTimes(r) => *r <= third,
    });
    if small {
        // F′ only involves the angles, so its degree is exact even for irrational ψ
        let level = TriangleShape::new(angles, Ratio::from_integer(1)).level();
        let cs: Vec<CycElem> = angles.iter().map(|a| a.cos(level)).collect::<std::result::Result<_, _>>()?;
        let mut gens: Vec<CycElem> = cs.iter().map(|c| c * c).collect();
        gens.push(&(&cs[0] * &cs[1]) * &cs[2]);
        let degree = subfield_degree(&gens)?;
        constraints.push(constraint(
            "F_PRIME_MEMBERSHIP",
            format!(
                "cos²ψ ∈ F′ = Q(cos²θ₁, cos²θ₂, cos²θ₃, cosθ₁cosθ₂cosθ₃) with θ = ({}, {}, {}); [F′:Q] = {degree}",
                angles[0], angles[1], angles[2]
            ),
        ));
    }
    Ok(IrrationalPsiReport {
        angles: angles.map(|a| a.wire()),
        nonuniform,
        constraints,
    })
}
