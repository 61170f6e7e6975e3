"""Model files and the built-in catalog."""
import json
from dataclasses import replace
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import TypeAdapter, ValidationError

from core.algebra import Signature
from core.bv_kernel import BVModel
from core.errors import ExpressionError, SchemaError
from core.presentation import ActingClass, ActionTable, HurewiczTable, LoopOperatorTable, ManifoldAlgebra, SamelsonTable, SigmaTable
from models.schemas import (
    ActionClassSpec,
    CatalogEntry,
    HepworthModelFile,
    LieGroupModelFile,
    LoopOperatorSpec,
    ManifoldSpec,
    ModelFile,
    MonoidData,
    RationalActionModelFile,
    SamelsonSpec,
    SphereActionModelFile,
)
from rules.lie_group import SignMutation
from services.config import get_logger, get_settings
from services.model_builder import (
    build_hepworth_model,
    build_lie_group_model,
    build_rational_action_model,
    build_sphere_model,
    loop_signature,
    tensor_model,
)
from tools.expression import ExpressionTools

logger = get_logger("model_loader")

_MODEL_FILE = TypeAdapter(ModelFile)


def _field_path(error: dict) -> str:
    return ".".join(str(part) for part in error["loc"]) or "<root>"


def validate_model(raw: dict, origin: str = "<memory>"):
    try:
        return _MODEL_FILE.validate_python(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise SchemaError(f"{origin}: field {_field_path(first)}: {first['msg']}") from e


def read_model_file(path: Union[str, Path]):
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError:
        raise SchemaError(f"model file not found: {path}")
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})")
    return validate_model(raw, origin=str(path))


def _key(name: str) -> str:
    return name.replace(" ", "").upper()


@lru_cache(maxsize=4)
def _catalog_index(directory: str) -> Tuple[Dict[str, Path], Tuple[CatalogEntry, ...]]:
    index: Dict[str, Path] = {}
    entries: List[CatalogEntry] = []
    for path in sorted(Path(directory).glob("*.json")):
        description = read_model_file(path)
        entries.append(CatalogEntry(name=description.name, aliases=description.aliases,
                                    kind=description.kind, notes=description.notes))
        for label in [description.name, path.stem, *description.aliases]:
            index.setdefault(_key(label), path)
    return index, tuple(entries)


def list_catalog(directory: Optional[Path] = None) -> List[CatalogEntry]:
    return list(_catalog_index(str(directory or get_settings().catalog_dir))[1])


def parse_model(source: Union[str, Path], directory: Optional[Path] = None):
    """A model file path or a catalog name/alias, validated against the schema."""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        return read_model_file(path)
    index, _ = _catalog_index(str(directory or get_settings().catalog_dir))
    key = _key(str(source))
    if key not in index:
        raise SchemaError(f"{source!r} is neither a model file nor a catalog entry")
    return read_model_file(index[key])


# ----------------------------------------------------------------------------
# Description -> BVModel
# ----------------------------------------------------------------------------

def manifold_from_spec(spec: ManifoldSpec) -> ManifoldAlgebra:
    return ManifoldAlgebra.build(
        [(g.name, g.degree, g.truncation) for g in spec.generators], name=spec.name, dimension=spec.dimension
    )


def action_from_spec(manifold: ManifoldAlgebra, classes: List[ActionClassSpec]) -> ActionTable:
    sig = manifold.signature
    table = {}
    for cls_ in classes:
        try:
            images = {
                ExpressionTools.parse_monomial(sig, source): ExpressionTools.parse(sig, image)
                for source, image in cls_.images.items()
            }
        except ExpressionError as e:
            raise SchemaError(f"field action.{cls_.name}.images: {e}") from e
        table[cls_.name] = ActingClass(name=cls_.name, degree=cls_.degree, images=images)
    return ActionTable(manifold=manifold, classes=table)


def loop_operator_from_spec(loop: Signature, spec: Optional[LoopOperatorSpec]) -> Optional[LoopOperatorTable]:
    if spec is None:
        return None
    values = {ExpressionTools.parse_monomial(loop, k): ExpressionTools.parse(loop, v) for k, v in spec.entries.items()}
    return LoopOperatorTable(loop, values, default_zero=spec.unlisted == "zero")


def samelson_from_spec(monoid: MonoidData, spec: Optional[SamelsonSpec]) -> Optional[SamelsonTable]:
    if spec is None:
        return None
    degrees = {g.name: g.degree for g in monoid.spherical}
    values = {(e.left, e.right): dict(e.value) for e in spec.entries}
    return SamelsonTable(degrees=degrees, values=values)


def build_model(description, mutation: Optional[SignMutation] = None) -> BVModel:
    if isinstance(description, LieGroupModelFile):
        model = build_lie_group_model(description.group, name=description.name, mutation=mutation)
        if description.samelson is not None:
            samelson = samelson_from_spec(model.monoid, description.samelson)
            model = replace(model, samelson=samelson, _brackets={})
        return model
    if mutation is not None:
        raise SchemaError("sign mutations only apply to lie_group models")
    if isinstance(description, SphereActionModelFile):
        manifold = manifold_from_spec(description.manifold)
        action = action_from_spec(manifold, description.action)
        return build_sphere_model(description.which, manifold, action, name=description.name)
    if isinstance(description, RationalActionModelFile):
        manifold = manifold_from_spec(description.manifold)
        action = action_from_spec(manifold, description.action)
        loop = loop_signature(description.monoid)
        return build_rational_action_model(
            description.monoid, manifold, action,
            HurewiczTable(values={k: dict(v) for k, v in description.hur.items()}),
            loop_operator=loop_operator_from_spec(loop, description.b_loop),
            samelson=samelson_from_spec(description.monoid, description.samelson),
            name=description.name,
        )
    if isinstance(description, HepworthModelFile):
        manifold = manifold_from_spec(description.manifold)
        action = action_from_spec(manifold, description.action)
        loop = loop_signature(description.monoid)
        values = {ExpressionTools.parse_monomial(loop, k): dict(v) for k, v in description.sigma.items()}
        return build_hepworth_model(
            description.monoid, manifold, action, SigmaTable(loop, values),
            loop_operator=loop_operator_from_spec(loop, description.b_loop), name=description.name,
        )
    raise SchemaError(f"unsupported model description {type(description).__name__}")


def load_model(source: Union[str, Path], tensor: Optional[str] = None,
               mutation: Optional[SignMutation] = None) -> BVModel:
    model = build_model(parse_model(source), mutation=mutation)
    if tensor:
        other = build_model(parse_model(tensor))
        model = tensor_model(model, other)
    return model
