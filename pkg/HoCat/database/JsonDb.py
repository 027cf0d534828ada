import json
from pathlib import Path
from typing import List, Optional, Union

from HoCat.engine.errors import InstanceError
from HoCat.logging import LOGGER

logger = LOGGER(__name__)


"""
A corpus directory holds one JSON document per instance, battery member
or functor, keyed by file name without the extension.

batteries/default           (collection)
│   ├── arrow.json          (document "arrow")
│   └── z2.json             (document "z2")
│
instances                   (collection)
    ├── triv_diamond.json
    └── functors/           (collection of functor documents)
        └── identity_diamond.json
"""


class JsonDb:
    """
    JsonDb class to help with basic CRUD ( Create, Read, Delete, Update)
    operations of documents in one corpus directory.
    """

    def __init__(self, collection: Union[str, Path]):
        self.collection: Path = Path(collection)

    def path_of(self, document_id: str) -> Path:
        return self.collection / f"{document_id}.json"

    def read_document(self, document_id: str, projection: Optional[List[str]] = None) -> dict:
        """
        Read a document using its id. If projection is given, only those keys
        are returned.

        Example:
        projection = ["name", "objects"]
        """

        path = self.path_of(document_id)
        try:
            with open(path, "r", encoding="utf-8") as f:
                document = json.load(f)
        except FileNotFoundError:
            raise InstanceError(f"no document {document_id!r} in {self.collection}") from None
        except json.JSONDecodeError as error:
            raise InstanceError(f"{path} is not valid JSON: {error}") from None

        if not isinstance(document, dict):
            raise InstanceError(f"{path} does not hold a JSON object")
        if projection:
            return {key: document[key] for key in projection if key in document}
        return document

    def update_document(self, document_id: str, updated_data: dict) -> None:
        """Updates as well as creates the document, merging top-level keys."""

        path = self.path_of(document_id)
        document = self.read_document(document_id) if path.exists() else {}
        document.update(updated_data)
        self.collection.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, ensure_ascii=False)
            f.write("\n")
        logger.debug(f"wrote {path}")

    def delete_document(self, document_id: str) -> None:
        """Delete the document using its id."""

        self.path_of(document_id).unlink(missing_ok=True)

    def total_documents(self) -> int:
        """Return total number of documents in the collection."""

        return len(self.get_all_id())

    def get_all_id(self) -> List[str]:
        """Return every document id in the collection, in file-name order."""

        if not self.collection.is_dir():
            return []
        return sorted(path.stem for path in self.collection.glob("*.json"))


def check_corpus_dir(path: Union[str, Path]) -> None:
    if not Path(path).is_dir():
        raise InstanceError(f"corpus directory {path} does not exist")
