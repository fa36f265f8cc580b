import * as fs from 'fs'
import * as jpeg from 'jpeg-js'
import { PNG } from 'pngjs'

export interface DecodedImage {
  width: number
  height: number
  /** RGBA interleaved, 8 bits per channel */
  pixels: Uint8Array
}

const PNG_MAGIC = Buffer.from([0x89, 0x50, 0x4e, 0x47])
const JPEG_MAGIC = Buffer.from([0xff, 0xd8])

/** Decode a PNG or JPEG file; throws for anything else or corrupt data. */
export function decodeImageFile(filePath: string): DecodedImage {
  const raw = fs.readFileSync(filePath)
  if (raw.subarray(0, 4).equals(PNG_MAGIC)) {
    const png = PNG.sync.read(raw)
    return { width: png.width, height: png.height, pixels: new Uint8Array(png.data) }
  }
  if (raw.subarray(0, 2).equals(JPEG_MAGIC)) {
    const image = jpeg.decode(raw, { useTArray: true, maxMemoryUsageInMB: 512 })
    return { width: image.width, height: image.height, pixels: new Uint8Array(image.data) }
  }
  throw new Error(`not a PNG or JPEG file: ${filePath}`)
}

/** Drop alpha, keep RGB in [0, 255] as float32 in HWC order. */
export function toRgbFloats(image: DecodedImage): Float32Array {
  const { width, height, pixels } = image
  const rgb = new Float32Array(width * height * 3)
  for (let i = 0; i < width * height; i++) {
    rgb[i * 3] = pixels[i * 4]
    rgb[i * 3 + 1] = pixels[i * 4 + 1]
    rgb[i * 3 + 2] = pixels[i * 4 + 2]
  }
  return rgb
}
