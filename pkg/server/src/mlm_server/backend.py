"""Model backends: anything that can fill one masked slot.

The app only needs three things from a backend: the model's own mask
symbol, a raw candidate list for a masked token sequence, and a
predicate saying which vocabulary pieces count as single whole words.
The transformers-based implementation below is the reference; tests
inject stubs with the same surface.
"""

from __future__ import annotations

from typing import Protocol


class FillBackend(Protocol):
    model_id: str
    mask_symbol: str

    def fill(self, tokens: list[str], n_raw: int) -> list[tuple[str, float]]:
        """Raw (piece, probability) candidates for the single masked slot,
        probabilities non-increasing.  tokens already carry mask_symbol at
        the masked position."""
        ...

    def is_word(self, piece: str) -> bool:
        """True when the vocabulary piece stands alone as a whole word."""
        ...


class TransformersBackend:
    """Masked-LM inference via transformers + torch.

    Imports are local so that protocol-level tests can run without the
    ML stack.  Pieces are judged words unless they are special tokens,
    WordPiece continuations ("##..."), empty, or contain whitespace.
    """

    def __init__(self, model_id: str, max_length: int = 128) -> None:
        import torch
        from transformers import AutoModelForMaskedLM, AutoTokenizer

        self._torch = torch
        self.model_id = model_id
        self.max_length = max_length
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModelForMaskedLM.from_pretrained(model_id)
        self.model.eval()
        self.mask_symbol = self.tokenizer.mask_token
        self._specials = set(self.tokenizer.all_special_tokens)

    def fill(self, tokens: list[str], n_raw: int) -> list[tuple[str, float]]:
        torch = self._torch
        text = " ".join(tokens)
        encoding = self.tokenizer(
            text, return_tensors="pt", truncation=True, max_length=self.max_length
        )
        mask_positions = (encoding["input_ids"][0] == self.tokenizer.mask_token_id).nonzero()
        if mask_positions.numel() == 0:
            return []  # the mask fell beyond the truncation window
        position = int(mask_positions[0, 0])
        with torch.no_grad():
            logits = self.model(**encoding).logits[0, position]
        probs = torch.softmax(logits, dim=-1)
        k = min(n_raw, probs.shape[-1])
        top = torch.topk(probs, k)
        pieces = self.tokenizer.convert_ids_to_tokens(top.indices.tolist())
        return [(piece, float(score)) for piece, score in zip(pieces, top.values.tolist())]

    def is_word(self, piece: str) -> bool:
        return (
            bool(piece)
            and piece not in self._specials
            and not piece.startswith("##")
            and not any(ch.isspace() for ch in piece)
        )
