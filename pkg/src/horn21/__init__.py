"""Elliptic multiplicative Horn problem in PU(2,1).

Decides, for a triple of elliptic conjugacy classes of PU(2,1) given by
their angle pairs, whether there exist group elements (A, B, C) in those
classes with ABC = Id.  The answer is evaluated two independent ways:

* exactly, through the five-polytope description of the solution set
  (`horn21.polytopes`), built on the catalog of 27 reducible walls
  (`horn21.walls`);
* at the matrix level, by constructing or searching for witness triples
  (`horn21.oracle`).

`horn21.cli` exposes everything as the `horn` command, including an SVG
renderer for two-dimensional slices of the solution set.
"""

from horn21.angles import AnglePair, ClassTriple, ParseError, parse_angle, psi
from horn21.linalg import (
    J,
    GroupElement,
    HermitianForm,
    VectorType,
    eigensystem_3x3,
    hermitian_pairing,
    signature,
    su_normalize,
    vector_type,
)
from horn21.isometry import (
    IsometryClass,
    IsometryKind,
    Layer,
    MirrorKind,
    angle_pair,
    classify,
    complex_reflection,
    elliptic_rep,
    layer_product,
    standard_lift,
)
from horn21.horn_low import (
    pu11_construct,
    pu11_member,
    u2_construct,
    u2_member,
)
from horn21.walls import (
    Facet,
    LinearFormValues,
    Wall,
    active_walls,
    facet_of,
    linear_forms,
    wall_catalog,
)
from horn21.polytopes import (
    CellId,
    CellRecord,
    MembershipReport,
    OnWall,
    PolytopeId,
    cell_id,
    cell_table,
    polytope_member,
    psi_consistency,
    surjective_pair,
)
from horn21.oracle import (
    SamplerConfig,
    WitnessNotFound,
    WitnessTriple,
    decompfamily_witness,
    find_witness,
    random_u21,
    sample_momentum,
    verify_grid,
)
from horn21.render import SliceRaster, SliceSpec, render_slice

__version__ = "0.1.0"
