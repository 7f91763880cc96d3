// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alu.hpp"
#include "crypto.hpp"
#include "machine_state.hpp"
#include "opcodes.hpp"
#include "timing.hpp"
#include "types.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evmx
{
enum class Status
{
    Success,
    Revert,
    OutOfGas,
    Fault,
};

constexpr std::string_view to_string(Status s) noexcept
{
    switch (s)
    {
    case Status::Success:
        return "Success";
    case Status::Revert:
        return "Revert";
    case Status::OutOfGas:
        return "OutOfGas";
    case Status::Fault:
        return "Fault";
    }
    return "Unknown";
}

/// One executed opcode.
struct TraceStep
{
    std::uint64_t index = 0;
    std::uint32_t pc = 0;
    std::uint8_t opcode = 0;
    std::string mnemonic;
    std::uint64_t gas_before = 0;
    std::uint64_t gas_after = 0;
    std::uint32_t cycles = 0;
    std::size_t stack_depth = 0;
    std::optional<Word256> stack_top;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Address produced by CREATE or CREATE2. The value is recorded, not transferred.
struct CreateRecord
{
    std::uint8_t opcode = 0;
    Address address;
    Word256 value;
    std::optional<Word256> salt;
    std::optional<std::uint64_t> nonce;
    Digest256 init_code_hash;

    friend bool operator==(const CreateRecord&, const CreateRecord&) = default;
};

/// Outcome of a run. storage_out is the final storage (oStore), or the pre-state when
/// the run did not succeed; return_data is the RTN contents (retVal).
struct Receipt
{
    Status status = Status::Success;
    std::optional<VmError> error;
    std::uint64_t gas_limit = 0;
    std::uint64_t gas_used = 0;
    std::uint64_t gas_remaining = 0;
    std::uint64_t cycles = 0;
    std::uint64_t steps = 0;
    double clock_hz = default_clock_hz;
    double simulated_time_ns = 0;
    Bytes return_data;
    Storage::Entries storage_out;
    std::vector<CreateRecord> creates;
    std::uint64_t storage_collisions = 0;
    std::optional<std::vector<TraceStep>> trace;

    friend bool operator==(const Receipt&, const Receipt&) = default;
};

/// The FSM's mutable context.
struct MachineState
{
    ProgramCounter pc;
    Stack stack;
    Memory memory;
    Storage storage;
    BytecodeMemory bcm;
    std::uint64_t gas_remaining = 0;
    std::uint64_t cycles_elapsed = 0;
    Bytes return_data;
    bool halted = false;
};

/// Fetch-decode-execute engine over one program.
class Executor
{
public:
    /// Loads bytecode into BCM and the gas limit into the gas counter. Throws VmException
    /// (BytecodeTooLarge) for oversize code and std::invalid_argument for a bad config.
    Executor(BytesView code, ExecutionConfig cfg)
      : cfg_{std::move(cfg)}, clock_{cfg_.clock_hz}
    {
        cfg_.validate();
        state_.bcm = BytecodeMemory{code};
        state_.storage = Storage{cfg_.storage_mode};
        for (const auto& [k, v] : cfg_.initial_storage)
            state_.storage.store(k, v);
        pre_storage_ = state_.storage.snapshot();
        state_.gas_remaining = cfg_.gas_limit;
        if (cfg_.record_trace)
            trace_.emplace();
    }

    [[nodiscard]] const MachineState& state() const noexcept { return state_; }
    [[nodiscard]] const ExecutionConfig& config() const noexcept { return cfg_; }

    /// Executes exactly one opcode. Returns the receipt once execution halts.
    std::optional<Receipt> step()
    {
        if (state_.halted)
            throw std::logic_error("step() on a halted machine");

        const auto pc = state_.pc.value();
        if (pc >= state_.bcm.size())
            return finish(Status::Success, std::nullopt);

        const auto op = state_.bcm[pc];
        const auto* spec = opcode_table().find(op);
        if (spec == nullptr)
        {
            return finish(Status::Fault,
                VmError{ErrorKind::InvalidOpcode, "opcode " + to_hex(std::array{op}) + " at pc " +
                                                      std::to_string(pc)});
        }
        if (steps_ >= cfg_.step_limit)
        {
            return finish(Status::OutOfGas,
                VmError{ErrorKind::OutOfGas, "step limit " + std::to_string(cfg_.step_limit) + " reached"});
        }
        if (state_.gas_remaining < spec->gas)
        {
            return finish(Status::OutOfGas,
                VmError{ErrorKind::OutOfGas, spec->mnemonic + " needs " + std::to_string(spec->gas) +
                                                 " gas, " + std::to_string(state_.gas_remaining) +
                                                 " left at pc " + std::to_string(pc)});
        }

        const auto gas_before = state_.gas_remaining;
        state_.gas_remaining -= spec->gas;
        try
        {
            execute(*spec);
        }
        catch (const VmException& e)
        {
            return finish(Status::Fault, e.error());
        }
        state_.cycles_elapsed += spec->cycles;

        if (trace_)
        {
            TraceStep t;
            t.index = steps_;
            t.pc = pc;
            t.opcode = op;
            t.mnemonic = spec->mnemonic;
            t.gas_before = gas_before;
            t.gas_after = state_.gas_remaining;
            t.cycles = spec->cycles;
            t.stack_depth = state_.stack.depth();
            if (!state_.stack.empty())
                t.stack_top = state_.stack.peek();
            trace_->push_back(std::move(t));
        }
        ++steps_;

        if (halt_status_)
            return finish(*halt_status_, std::nullopt);
        return std::nullopt;
    }

    Receipt run()
    {
        while (true)
        {
            if (auto r = step())
                return std::move(*r);
        }
    }

private:
    Word256 pop() { return state_.stack.pop(); }
    void push(const Word256& w) { state_.stack.push(w); }

    void halt(Status s) { halt_status_ = s; }

    void execute(const OpcodeSpec& spec)
    {
        auto& st = state_.stack;
        if (st.depth() < spec.stack_required)
        {
            throw VmException(ErrorKind::StackUnderflow,
                spec.mnemonic + " needs " + std::to_string(spec.stack_required) +
                    " stack items, depth " + std::to_string(st.depth()));
        }
        if (st.depth() - spec.pops + spec.pushes > stack_capacity)
            throw VmException(ErrorKind::StackOverflow, spec.mnemonic + " at depth 1024");

        const auto op = spec.code;
        std::uint32_t next_pc = state_.pc.value() + 1 + spec.immediate_len;
        bool jumped = false;

        const auto binary = [&](auto fn) {
            const auto a = pop();
            const auto b = pop();
            push(fn(a, b));
        };
        const auto bitop = [&](alu::BitOp bop) {
            binary([bop](const Word256& a, const Word256& b) { return alu::compare_and_bitwise(bop, a, b); });
        };

        switch (op)
        {
        case OP_STOP:
            halt(Status::Success);
            break;

        case OP_ADD:
            binary([](const Word256& a, const Word256& b) { return alu::add(a, b); });
            break;
        case OP_MUL:
            binary([](const Word256& a, const Word256& b) { return alu::mul_shift_add(a, b); });
            break;
        case OP_SUB:
            binary([](const Word256& a, const Word256& b) { return alu::sub(a, b); });
            break;
        case OP_DIV:
            binary([](const Word256& a, const Word256& b) { return alu::div(a, b); });
            break;
        case OP_SDIV:
            binary([](const Word256& a, const Word256& b) { return alu::signed_div(a, b); });
            break;
        case OP_MOD:
            binary([](const Word256& a, const Word256& b) { return alu::mod(a, b); });
            break;
        case OP_SMOD:
            binary([](const Word256& a, const Word256& b) { return alu::signed_mod(a, b); });
            break;
        case OP_ADDMOD:
        {
            const auto a = pop();
            const auto b = pop();
            const auto m = pop();
            push(alu::addmod(a, b, m));
            break;
        }
        case OP_MULMOD:
        {
            const auto a = pop();
            const auto b = pop();
            const auto m = pop();
            push(alu::mulmod(a, b, m));
            break;
        }
        case OP_EXP:
            binary([](const Word256& a, const Word256& b) { return alu::exp(a, b); });
            break;
        case OP_SIGNEXTEND:
            binary([](const Word256& b, const Word256& x) { return alu::signextend(b, x); });
            break;

        case OP_LT:
            bitop(alu::BitOp::LT);
            break;
        case OP_GT:
            bitop(alu::BitOp::GT);
            break;
        case OP_SLT:
            bitop(alu::BitOp::SLT);
            break;
        case OP_SGT:
            bitop(alu::BitOp::SGT);
            break;
        case OP_EQ:
            bitop(alu::BitOp::EQ);
            break;
        case OP_ISZERO:
            push(alu::compare_and_bitwise(alu::BitOp::ISZERO, pop(), {}));
            break;
        case OP_AND:
            bitop(alu::BitOp::AND);
            break;
        case OP_OR:
            bitop(alu::BitOp::OR);
            break;
        case OP_XOR:
            bitop(alu::BitOp::XOR);
            break;
        case OP_NOT:
            push(alu::compare_and_bitwise(alu::BitOp::NOT, pop(), {}));
            break;
        case OP_BYTE:
            bitop(alu::BitOp::BYTE);
            break;
        case OP_SHL:
            bitop(alu::BitOp::SHL);
            break;
        case OP_SHR:
            bitop(alu::BitOp::SHR);
            break;
        case OP_SAR:
            bitop(alu::BitOp::SAR);
            break;

        case OP_KECCAK256:
        {
            const auto offset = pop();
            const auto size = pop();
            const auto data = state_.memory.read_region(offset, size);
            push(word_from_bytes(keccak256(data).bytes));
            break;
        }

        case OP_ADDRESS:
            push(cfg_.contract_address.to_word());
            break;
        case OP_ORIGIN:
        case OP_CALLER:
            push(cfg_.sender_address.to_word());
            break;
        case OP_CALLVALUE:
            push(cfg_.call_value);
            break;
        case OP_CALLDATALOAD:
        {
            const auto offset = pop();
            push(word_from_bytes(slice_padded(cfg_.init_data, offset, 32)));
            break;
        }
        case OP_CALLDATASIZE:
            push(Word256{cfg_.init_data.size()});
            break;
        case OP_CALLDATACOPY:
        case OP_CODECOPY:
        {
            const auto dest = pop();
            const auto offset = pop();
            const auto size = pop();
            (void)state_.memory.check_range(dest, size);
            const BytesView src = op == OP_CODECOPY ? state_.bcm.code() : BytesView{cfg_.init_data};
            const auto n = size.is_zero() ? 0 : static_cast<std::size_t>(size.low_u64());
            state_.memory.write_region(dest, size, slice_padded(src, offset, n));
            break;
        }
        case OP_CODESIZE:
            push(Word256{state_.bcm.size()});
            break;
        case OP_EXTCODECOPY:
        {
            pop();
            const auto dest = pop();
            pop();
            const auto size = pop();
            state_.memory.write_region(dest, size, {});
            break;
        }
        case OP_BALANCE:
        case OP_EXTCODESIZE:
        case OP_EXTCODEHASH:
        case OP_BLOCKHASH:
            pop();
            push({});
            break;
        case OP_GASPRICE:
        case OP_RETURNDATASIZE:
        case OP_COINBASE:
        case OP_TIMESTAMP:
        case OP_NUMBER:
        case OP_PREVRANDAO:
        case OP_SELFBALANCE:
        case OP_BASEFEE:
            push({});
            break;
        case OP_GASLIMIT:
            push(Word256{cfg_.gas_limit});
            break;
        case OP_CHAINID:
            push(Word256{1});
            break;

        case OP_POP:
            pop();
            break;
        case OP_MLOAD:
            push(state_.memory.load32(pop()));
            break;
        case OP_MSTORE:
        {
            const auto offset = pop();
            const auto value = pop();
            state_.memory.store32(offset, value);
            break;
        }
        case OP_MSTORE8:
        {
            const auto offset = pop();
            const auto value = pop();
            state_.memory.store8(offset, static_cast<std::uint8_t>(value.low_u64()));
            break;
        }
        case OP_SLOAD:
            push(state_.storage.load(pop()));
            break;
        case OP_SSTORE:
        {
            const auto key = pop();
            const auto value = pop();
            state_.storage.store(key, value);
            break;
        }
        case OP_JUMP:
            state_.pc.set(pop(), state_.bcm);
            jumped = true;
            break;
        case OP_JUMPI:
        {
            const auto target = pop();
            const auto cond = pop();
            if (!cond.is_zero())
            {
                state_.pc.set(target, state_.bcm);
                jumped = true;
            }
            break;
        }
        case OP_PC:
            push(Word256{state_.pc.value()});
            break;
        case OP_MSIZE:
            push(Word256{state_.memory.active_size()});
            break;
        case OP_GAS:
            push(Word256{state_.gas_remaining});
            break;
        case OP_JUMPDEST:
            break;

        case OP_CREATE:
            exec_create();
            break;
        case OP_CREATE2:
            exec_create2();
            break;
        case OP_CALL:
        case OP_CALLCODE:
        case OP_DELEGATECALL:
        case OP_STATICCALL:
        {
            pop();  // gas
            pop();  // address
            if (op == OP_CALL || op == OP_CALLCODE)
                pop();  // value
            const auto args_offset = pop();
            const auto args_size = pop();
            const auto ret_offset = pop();
            const auto ret_size = pop();
            (void)state_.memory.check_range(args_offset, args_size);
            (void)state_.memory.check_range(ret_offset, ret_size);
            push(cfg_.call_stub_status);
            break;
        }
        case OP_RETURN:
        case OP_REVERT:
        {
            const auto offset = pop();
            const auto size = pop();
            state_.return_data = state_.memory.read_region(offset, size);
            halt(op == OP_RETURN ? Status::Success : Status::Revert);
            break;
        }

        default:
            if (op == OP_PUSH0)
                push({});
            else if (op >= OP_PUSH1 && op <= OP_PUSH32)
                push(word_from_bytes(state_.bcm.immediate(state_.pc.value() + 1u, spec.immediate_len)));
            else if (op >= OP_DUP1 && op <= OP_DUP16)
                st.dup(op - OP_DUP1 + 1u);
            else if (op >= OP_SWAP1 && op <= OP_SWAP16)
                st.swap(op - OP_SWAP1 + 1u);
            else if (op >= OP_LOG0 && op <= OP_LOG4)
            {
                const auto offset = pop();
                const auto size = pop();
                for (int i = 0; i < op - OP_LOG0; ++i)
                    pop();
                (void)state_.memory.read_region(offset, size);
            }
            else
                throw VmException(ErrorKind::InvalidOpcode, "no handler for " + spec.mnemonic);
            break;
        }

        if (!jumped && !halt_status_)
            state_.pc.advance(next_pc - state_.pc.value());
    }

    /// CREATE2: value → r1, offset → r3, then size; init code is read from MEM and hashed
    /// into d, salt is popped while d is latched, and the delta preimage is hashed again.
    void exec_create2()
    {
        const auto value = pop();
        const auto offset = pop();
        const auto size = pop();
        const auto init_code = state_.memory.read_region(offset, size);
        const auto d = keccak256(init_code);
        const auto salt = pop();
        const auto k = delta_concat(cfg_.sender_address, salt.to_be_bytes(), d);
        const auto address = extract_address(keccak256(k), cfg_.create2_window);
        push(address.to_word());
        creates_.push_back({OP_CREATE2, address, value, salt, std::nullopt, d});
    }

    /// CREATE: address from RLP(sender, nonce). Each CREATE in a run uses the next nonce.
    void exec_create()
    {
        const auto value = pop();
        const auto offset = pop();
        const auto size = pop();
        const auto init_code = state_.memory.read_region(offset, size);
        const auto nonce = cfg_.sender_nonce + create_count_;
        const auto address = create_address(cfg_.sender_address, nonce);
        ++create_count_;
        push(address.to_word());
        creates_.push_back({OP_CREATE, address, value, std::nullopt, nonce, keccak256(init_code)});
    }

    /// n bytes of src starting at offset, zero-padded past its end.
    static Bytes slice_padded(BytesView src, const Word256& offset, std::size_t n)
    {
        Bytes out(n, 0);
        if (!offset.fits_u64() || offset.low_u64() >= src.size())
            return out;
        const auto start = static_cast<std::size_t>(offset.low_u64());
        const auto count = std::min(n, src.size() - start);
        std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(start), count, out.begin());
        return out;
    }

    Receipt finish(Status status, std::optional<VmError> error)
    {
        state_.halted = true;
        if (status == Status::OutOfGas || status == Status::Fault)
        {
            state_.gas_remaining = 0;
            state_.return_data.clear();
        }
        if (status != Status::Success)
        {
            state_.storage.restore(pre_storage_);
            creates_.clear();
        }

        Receipt r;
        r.status = status;
        r.error = std::move(error);
        r.gas_limit = cfg_.gas_limit;
        r.gas_remaining = state_.gas_remaining;
        r.gas_used = cfg_.gas_limit - state_.gas_remaining;
        r.cycles = state_.cycles_elapsed;
        r.steps = steps_;
        r.clock_hz = cfg_.clock_hz;
        r.simulated_time_ns = simulated_time_ns(r.cycles, clock_);
        r.return_data = state_.return_data;
        r.storage_out = state_.storage.snapshot();
        r.creates = creates_;
        r.storage_collisions = state_.storage.collisions();
        r.trace = trace_;
        return r;
    }

    ExecutionConfig cfg_;
    ClockConfig clock_;
    MachineState state_;
    Storage::Entries pre_storage_;
    std::optional<std::vector<TraceStep>> trace_;
    std::vector<CreateRecord> creates_;
    std::optional<Status> halt_status_;
    std::uint64_t steps_ = 0;
    std::uint64_t create_count_ = 0;
};

inline Executor load_program(BytesView code, const ExecutionConfig& cfg)
{
    return Executor{code, cfg};
}

inline Receipt run(BytesView code, const ExecutionConfig& cfg)
{
    return Executor{code, cfg}.run();
}

}  // namespace evmx
